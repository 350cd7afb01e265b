#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ammgreeks/cli.hpp"
#include "ammgreeks/greeks.hpp"
#include "ammgreeks/mc_oracle.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace ammgreeks;
using testsupport::rel_close;

namespace {

std::string config(const std::string& name) {
    const char* root = std::getenv("AMMGREEKS_SOURCE_DIR");
    return (fs::path(root ? root : ".") / "configs" / name).string();
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content = "") {
    const auto dir = fs::temp_directory_path() / "ammgreeks_test_cli";
    fs::create_directories(dir);
    const auto p = dir / name;
    if (!content.empty()) std::ofstream(p, std::ios::binary) << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

/// Last CSV record printed after the text block of `price`.
double price_of(const std::string& out) {
    const auto rows = parse_csv(out);
    return std::stod(rows.back()[1]);
}

}  // namespace

TEST_CASE("price command") {
    auto r = run({"price", "--config", config("locked_lp.json")});
    REQUIRE(r.code == 0);
    CHECK(price_of(r.out) == doctest::Approx(10307.444431899487706).epsilon(1e-12));
    CHECK(r.out.find("r_f") != std::string::npos);
    CHECK(r.out.find("tau") != std::string::npos);

    r = run({"price", "--config", config("ig.json"), "--strategy", "ig"});
    REQUIRE(r.code == 0);
    CHECK(price_of(r.out) == doctest::Approx(11.736715913895504446).epsilon(1e-10));

    r = run({"price", "--config", config("degenerate.json")});
    REQUIRE(r.code == 0);
    CHECK(price_of(r.out) == 10000.0);
    r = run({"price", "--config", config("degenerate.json"), "--strategy", "ig"});
    REQUIRE(r.code == 0);
    CHECK(price_of(r.out) == 0.0);

    const auto out = temp_file("price.csv");
    r = run({"price", "--config", config("locked_lp.json"), "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(parse_csv(slurp(out))[0][0] == "strategy");
}

TEST_CASE("usage and domain errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"price"}).code == 2);
    CHECK(run({"bogus", "--config", config("ig.json")}).code == 2);
    CHECK(run({"price", "--config", config("ig.json"), "--strategy", "straddle"}).code == 2);
    CHECK(run({"price", "--config", "/nonexistent.json"}).code == 2);
    CHECK(run({"price", "--config", config("locked_lp.json"), "--strategy", "ig"}).code == 2);

    const auto bad = temp_file("bad_sigma.json", R"({"market": {"r_f": 0, "sigma": -1}, "position": {"v0": 1, "s0": 1, "T": 1}, "spot": 1})");
    auto r = run({"price", "--config", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("market.sigma") != std::string::npos);

    const auto wild = temp_file(
        "overflow.json",
        R"({"market": {"r_f": 100, "sigma": 1}, "position": {"v0": 1, "s0": 1e300, "T": 10}, "spot": 1e300, "mc": {"n_paths": 2000}})");
    r = run({"verify", "--config", wild.string()});
    CHECK(r.code == 3);
    CHECK(r.err.find("domain error") != std::string::npos);
}

TEST_CASE("greeks command") {
    auto r = run({"greeks", "--config", config("locked_lp.json"), "--strategy", "unlocked-lp"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0] == std::vector<std::string>{"greek", "raw", "display", "display_unit"});
    std::map<std::string, double> raw;
    for (std::size_t i = 1; i < rows.size(); ++i) raw[rows[i][0]] = std::stod(rows[i][1]);
    CHECK(raw.at("vega") == 0.0);
    CHECK(raw.at("rho") == 0.0);
    CHECK(raw.at("delta") == doctest::Approx(5.0).epsilon(1e-14));

    r = run({"greeks", "--config", config("locked_lp.json")});
    REQUIRE(r.code == 0);
    const auto locked = parse_csv(r.out);
    CHECK(std::stod(locked[5][1]) < 0.0);  // vega of a locked LP
}

TEST_CASE("hedge command") {
    auto r = run({"hedge", "--config", config("hedge.json")});
    REQUIRE(r.code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[1][0] == "delta");
    CHECK(std::stod(rows[1][3]) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(std::abs(std::stod(rows[2][3])) <= 1e-15);
    CHECK(std::abs(std::stod(rows[3][3])) <= 1e-9);

    std::string moved = slurp(config("hedge.json"));
    moved.replace(moved.find("\"spot\": 1000"), 12, "\"spot\": 5000");
    const auto far = temp_file("hedge_far.json", moved);
    r = run({"hedge", "--config", far.string()});
    REQUIRE(r.code == 0);
    const auto far_rows = parse_csv(r.out);
    CHECK(std::stod(far_rows[1][3]) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(std::stod(far_rows[4][3]) == doctest::Approx(std::stod(rows[4][3])).epsilon(1e-12));
    CHECK(std::stod(far_rows[5][3]) == doctest::Approx(std::stod(rows[5][3])).epsilon(1e-12));

    std::string skewed = slurp(config("hedge.json"));
    skewed.replace(skewed.find("\"k\": 1000"), 9, "\"k\": 1100");
    const auto bad = temp_file("hedge_bad.json", skewed);
    r = run({"hedge", "--config", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("strike") != std::string::npos);
}

TEST_CASE("figures") {
    auto r = run({"figure", "--config", config("hedge.json"), "--figure", "il-curve"});
    REQUIRE(r.code == 0);
    auto rows = parse_csv(r.out);
    CHECK(rows.size() >= 201);
    double best = -1.0, best_r = 99.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double v = std::stod(rows[i][1]);
        CHECK(v <= 0.0);
        if (v > best) {
            best = v;
            best_r = std::stod(rows[i][0]);
        }
    }
    CHECK(best == 0.0);
    CHECK(best_r == 0.0);
    CHECK(std::stod(rows[1][1]) == -0.5);
    CHECK(std::stod(rows.back()[1]) == -0.5);

    r = run({"figure", "--config", config("hedge.json"), "--figure", "ig-gamma"});
    REQUIRE(r.code == 0);
    rows = parse_csv(r.out);
    CHECK(rows.size() >= 201);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) > 0.0);

    r = run({"figure", "--config", config("hedge.json"), "--figure", "lp-vega"});
    REQUIRE(r.code == 0);
    rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) <= 0.0);

    const auto cfg = load_scenario_config(config("hedge.json"));
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<std::size_t> pick(1, rows.size() - 1);
    for (int k = 0; k < 5; ++k) {
        const auto& row = rows[pick(gen)];
        LpState lp = cfg.scenario.lp;
        lp.s_t = std::stod(row[0]);
        CHECK(rel_close(std::stod(row[1]), greeks_locked_lp(lp).vega, 1e-15));
    }

    r = run({"figure", "--config", config("hedge.json"), "--figure", "nope"});
    CHECK(r.code == 2);
    CHECK(r.err.find("il-curve") != std::string::npos);
    CHECK(r.err.find("ig-rho") != std::string::npos);

    for (const auto& id : cli::figure_ids()) {
        std::ostringstream os;
        cli::write_figure(id, cfg, os);
        CHECK(parse_csv(os.str()).size() >= 201);
    }
}

TEST_CASE("table and grid commands") {
    auto r = run({"table", "--config", config("hedge.json")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("Delta1%") != std::string::npos);
    r = run({"grid", "--config", config("ig.json"), "--strategy", "ig"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"strike", "weight", "kind"});
    CHECK(rows.size() > 30);
}

TEST_CASE("verify is byte-identical across runs") {
    const auto a = temp_file("verify_a.csv");
    const auto b = temp_file("verify_b.csv");
    auto ra = run({"verify", "--config", config("verify.json"), "--paths", "20000", "--out", a.string()});
    auto rb = run({"verify", "--config", config("verify.json"), "--paths", "20000", "--out", b.string(), "--workers", "3"});
    CHECK(ra.code == 0);
    CHECK(rb.code == 0);
    CHECK(ra.out == rb.out);
    const std::string text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.rfind("check,closed_form,mc_mean,std_error,z_score,pass\n", 0) == 0);
}

TEST_CASE("standard error falls as one over root n") {
    const auto cfg = load_scenario_config(config("verify.json"));
    McConfig small;
    small.n_paths = 1000;
    small.seed = 42;
    McConfig big = small;
    big.n_paths = 1000000;
    const auto a = mc_price({PayoffKind::locked_lp}, cfg.scenario, small);
    const auto b = mc_price({PayoffKind::locked_lp}, cfg.scenario, big);
    const double ratio = a.std_error / b.std_error;
    CHECK(ratio >= 20.0);
    CHECK(ratio <= 50.0);
}
