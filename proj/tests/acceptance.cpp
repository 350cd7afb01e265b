// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ammgreeks/cli.hpp"
#include "ammgreeks/error.hpp"
#include "ammgreeks/greeks.hpp"
#include "ammgreeks/mc_oracle.hpp"
#include "ammgreeks/payoff.hpp"
#include "ammgreeks/replication.hpp"
#include "ammgreeks/verify.hpp"

namespace fs = std::filesystem;
using namespace ammgreeks;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

std::string source_path(const std::string& rel) {
    const char* root = std::getenv("AMMGREEKS_SOURCE_DIR");
    return (fs::path(root ? root : ".") / rel).string();
}

Scenario base_scenario(double s_t, double sigma, double r_f, double phi, double t, double T) {
    Scenario s;
    s.lp.position = pool_from_deposit(10000.0, 1000.0);
    s.lp.market = MarketParams::from_rf(r_f, sigma, phi);
    s.lp.s_t = s_t;
    s.lp.t = t;
    s.lp.maturity_T = T;
    s.lp.locked = true;
    return s;
}

Outcome payoff_identities() {
    Outcome o;
    const double tol = 1e-15;
    o.require(impermanent_loss(0.0) == 0.0, "IL(0) != 0");
    o.require(std::abs(impermanent_loss(3.0) + 0.5) <= tol, "IL(3) = " + num(impermanent_loss(3.0)));
    o.require(std::abs(impermanent_loss(-0.75) + 0.125) <= tol, "IL(-0.75) = " + num(impermanent_loss(-0.75)));
    for (int i = 0; i < 21; ++i) {
        const double r = -0.95 + 0.2 * i;
        const double il = impermanent_loss(r), ig = impermanent_gain(r);
        o.require(std::abs(ig + il) <= tol, "IG != -IL at r = " + num(r));
        o.require(il <= 0.0, "IL > 0 at r = " + num(r));
        // sqrt(r + 1) - r/2 - 1 = -(sqrt(r + 1) - 1)^2 / 2
        const double q = std::sqrt(r + 1.0) - 1.0;
        o.require(std::abs(il + 0.5 * q * q) <= tol * std::max(1.0, std::abs(il)), "IL surd mismatch at r = " + num(r));
    }
    return o;
}

Outcome hedge_identities() {
    Outcome o;
    const double v0 = 10000.0, k = 1000.0, r_f = 0.03, phi = 0.10, T = 1.0;
    const IgContract ig{v0, k, T, 0.0};
    const double theta_expect = v0 * r_f * (0.5 + phi * T) * std::exp(-r_f * T);
    const double rho_expect = -v0 * T * (0.5 + phi * T) * std::exp(-r_f * T);
    double theta_ref = 0.0, rho_ref = 0.0;
    bool first = true;
    for (double s : {1000.0, 200.0, 5000.0})
        for (double sigma : {0.7, 0.2, 1.4}) {
            const auto sc = base_scenario(s, sigma, r_f, phi, 0.0, T);
            const auto h = hedge_report(sc.lp, ig, sc.market(), s);
            const std::string at = " at s_t = " + num(s) + ", sigma = " + num(sigma);
            o.require(rel_close(h.total.delta, 5.0, 1e-10), "delta sum " + num(h.total.delta) + at);
            o.require(std::abs(h.total.gamma) <= 1e-10 * std::max(std::abs(h.lp.gamma), std::abs(h.ig.gamma)),
                      "gamma sum" + at);
            o.require(std::abs(h.total.vega) <= 1e-10 * std::max(std::abs(h.lp.vega), std::abs(h.ig.vega)),
                      "vega sum" + at);
            o.require(rel_close(h.total.theta, theta_expect, 1e-10), "theta sum " + num(h.total.theta) + at);
            o.require(rel_close(h.total.rho, rho_expect, 1e-10), "rho sum " + num(h.total.rho) + at);
            if (first) {
                theta_ref = h.total.theta;
                rho_ref = h.total.rho;
                first = false;
            }
            o.require(rel_close(h.total.theta, theta_ref, 1e-10), "theta sum varies" + at);
            o.require(rel_close(h.total.rho, rho_ref, 1e-10), "rho sum varies" + at);
        }
    return o;
}

McConfig mc(std::uint64_t seed, int workers = 1) {
    McConfig c;
    c.n_paths = 1000000;
    c.seed = seed;
    c.workers = workers;
    return c;
}

Outcome moment_verification() {
    Outcome o;
    const auto cases = standard_moment_cases();
    std::uint64_t seed = 1000;
    double worst = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string tag = "case" + std::to_string(i + 1);
        for (const auto& r : {sqrt_moment_check("sqrt_" + tag, cases[i], mc(seed++)),
                              forward_moment_check("forward_" + tag, cases[i], mc(seed++))}) {
            worst = std::max(worst, std::abs(r.z_score));
            o.require(r.pass, r.name + " z = " + num(r.z_score));
        }
    }
    if (o.pass) o.detail = "max |z| = " + num(worst);
    return o;
}

Outcome price_verification() {
    Outcome o;
    auto s = base_scenario(1000.0, 0.7, 0.03, 0.10, 0.25, 0.5);
    s.ig = IgContract{10000.0, 1000.0, 0.25 + 7.0 / 365.0, 0.25};
    const auto lp = price_check("locked_lp", PayoffKind::locked_lp, s, mc(2000));
    const auto ig = price_check("ig", PayoffKind::ig, s, mc(2001));
    o.require(lp.pass, "locked LP z = " + num(lp.z_score));
    o.require(ig.pass, "IG z = " + num(ig.z_score));
    o.require(std::abs(lp.closed_form - 10307.4) <= 0.05, "locked LP fixture " + num(lp.closed_form));
    o.require(std::abs(ig.closed_form - 11.7) <= 0.05, "IG fixture " + num(ig.closed_form));
    if (o.pass)
        o.detail = "locked LP " + num(lp.closed_form) + " (z " + num(lp.z_score) + "), IG " + num(ig.closed_form) +
                   " (z " + num(ig.z_score) + ")";
    return o;
}

Outcome greeks_verification() {
    Outcome o;
    int checked = 0;
    for (double s_t : {500.0, 1000.0, 2000.0})
        for (double sigma : {0.2, 0.7, 1.4})
            for (double tau : {7.0 / 365.0, 0.25, 1.0}) {
                auto sc = base_scenario(s_t, sigma, 0.03, 0.10, 0.5, 0.5 + tau);
                sc.ig = IgContract{10000.0, 1000.0, 0.5 + tau, 0.5};
                const std::string at = " at (" + num(s_t) + ", " + num(sigma) + ", " + num(tau) + ")";
                for (auto pricer : {PricerId::unlocked_lp, PricerId::locked_lp, PricerId::ig}) {
                    for (auto greek : {GreekId::delta, GreekId::gamma, GreekId::vega, GreekId::theta, GreekId::rho}) {
                        const auto r = greek_check(pricer, greek, sc);
                        o.require(!r.skipped && r.pass, r.name + at + ": " + num(r.estimate) + " vs " + num(r.closed_form));
                        ++checked;
                    }
                    // Percent greeks: the closed-form scaling of a finite difference.
                    const double fd_delta = fd_greek(pricer, sc, GreekId::delta, 1e-5);
                    const double fd_gamma = fd_greek(pricer, sc, GreekId::gamma, 1e-4);
                    GreeksReport g;
                    g.delta = closed_form_greek(pricer, GreekId::delta, sc);
                    g.gamma = closed_form_greek(pricer, GreekId::gamma, sc);
                    g = with_pct_scalings(g, s_t);
                    o.require(rel_close(fd_delta * s_t / 100.0, g.delta_pct, 1e-6),
                              "delta_1pct " + std::string(to_string(pricer)) + at);
                    o.require(rel_close(fd_gamma * (s_t / 100.0) * (s_t / 100.0), g.gamma_pct, 1e-5),
                              "gamma_1pct " + std::string(to_string(pricer)) + at);
                    checked += 2;
                }
            }
    if (o.pass) o.detail = std::to_string(checked) + " greek comparisons";
    return o;
}

Outcome replication_equivalence() {
    Outcome o;
    const double s0 = 1000.0;
    const auto market = MarketParams::from_rf(0.03, 0.7);
    const double tau = 7.0 / 365.0;
    const auto grid = build_strike_grid(s0, market.sigma, tau, kDefaultStripTolerance);
    double worst = 0.0;
    for (int i = 0; i < 21; ++i) {
        const double s_T = s0 * std::pow(10.0, -1.0 + 0.1 * i);
        const double err = std::abs(replicate_il_payoff(grid, s_T).value - impermanent_loss(s_T / s0 - 1.0));
        worst = std::max(worst, err);
    }
    o.require(worst <= 1e-4, "reconstruction error " + num(worst));

    const IgContract ig{10000.0, s0, tau, 0.0};
    const double closed = price_ig(ig, s0, market);
    const double strip = price_ig_via_strip(ig, s0, market, grid).value;
    o.require(std::abs(strip - closed) <= 1e-2 * closed, "strip IG " + num(strip) + " vs " + num(closed));

    // Convergence as the node count doubles; differences below 1e-12 of
    // the price are rounding noise and are not held to monotonicity.
    const double half_width = strike_grid_half_width(market.sigma, tau);
    double previous = INFINITY;
    for (std::size_t n = 16; n <= 4096; n *= 2) {
        const auto g = strike_grid_with_nodes(s0, half_width, n);
        const double err = std::abs(price_ig_via_strip(ig, s0, market, g).value - closed);
        o.require(err <= previous + 1e-12 * closed, "error grew at " + std::to_string(n) + " nodes: " + num(err));
        previous = err;
    }
    if (o.pass)
        o.detail = "max payoff error " + num(worst) + ", strip IG rel error " + num(std::abs(strip - closed) / closed) +
                   " with " + std::to_string(grid.size()) + " strikes";
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome o;
    const auto dir = fs::temp_directory_path() / "ammgreeks_acceptance";
    fs::create_directories(dir);
    const auto a = dir / "verify_a.csv", b = dir / "verify_b.csv";
    const std::string cfg = source_path("configs/verify.json");
    std::ostringstream out_a, out_b, err;
    const int ca = cli::run({"verify", "--config", cfg, "--out", a.string()}, out_a, err);
    const int cb = cli::run({"verify", "--config", cfg, "--out", b.string()}, out_b, err);
    o.require(ca == 0 && cb == 0, "verify exit codes " + std::to_string(ca) + ", " + std::to_string(cb) + " " + err.str());
    const std::string ta = slurp(a), tb = slurp(b);
    o.require(!ta.empty() && ta == tb, "reports differ");

    const auto sc = load_scenario_config(cfg).scenario;
    for (auto kind : {PayoffKind::locked_lp, PayoffKind::ig, PayoffKind::sqrt_moment}) {
        const auto one = mc_price({kind}, sc, mc(42, 1));
        const auto four = mc_price({kind}, sc, mc(42, 4));
        o.require(one.mean == four.mean && one.std_error == four.std_error,
                  std::string(to_string(kind)) + " differs between 1 and 4 workers");
    }
    if (o.pass) o.detail = std::to_string(ta.size()) + "-byte report reproduced";
    return o;
}

Outcome negative_control() {
    Outcome o;
    // beta with sigma^2/4 in place of sigma^2/8.
    const SqrtMomentFormula drifted = [](double s, const MarketParams& m, double tau) {
        return std::sqrt(s) * std::exp((m.r_f() / 2.0 - m.sigma * m.sigma / 4.0) * tau);
    };
    const MomentCase c{1000.0, MarketParams::from_rf(0.03, 0.7), 0.25};
    const auto bad = sqrt_moment_check("perturbed", c, mc(3000), drifted);
    const auto good = sqrt_moment_check("reference", c, mc(3000));
    o.require(std::abs(bad.z_score) > kZThreshold && !bad.pass, "perturbed formula not detected, z = " + num(bad.z_score));
    o.require(good.pass, "unperturbed formula rejected, z = " + num(good.z_score));
    if (o.pass) o.detail = "perturbed z = " + num(bad.z_score) + ", reference z = " + num(good.z_score);
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;  // <= 0: no runtime bound
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "exact payoff identities", 1.0, payoff_identities},
        {2, "hedge identities", 1.0, hedge_identities},
        {3, "moment verification", 30.0, moment_verification},
        {4, "price verification", 30.0, price_verification},
        {5, "greeks verification", 5.0, greeks_verification},
        {6, "replication equivalence", 10.0, replication_equivalence},
        {7, "determinism", 0.0, determinism},
        {8, "negative control", 0.0, negative_control},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0.0 && secs > c.limit_s) {
            if (o.pass) o.detail = "runtime " + num(secs) + " s exceeds " + num(c.limit_s) + " s";
            o.pass = false;
        }
        std::printf("%s criterion %d: %-24s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
