#include "ammgreeks/scenario_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ammgreeks/error.hpp"
#include "ammgreeks/replication.hpp"

namespace ammgreeks {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError(field + ": " + what);
}

// Reads fields out of one JSON object and remembers which keys were used,
// so leftovers can be reported.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string field(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    double number(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number()) fail(field(key), "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(field(key), "must be finite");
        return x;
    }

    std::optional<double> optional_number(const std::string& key) {
        if (!has(key)) return std::nullopt;
        return number(key);
    }

    /// `key` in years or `key_days` in days; exactly one may be present.
    std::optional<double> optional_time(const std::string& key) {
        const std::string days = key + "_days";
        if (has(key) && has(days)) fail(field(key), "give either " + key + " or " + days + ", not both");
        if (has(days)) return number(days) / 365.0;
        return optional_number(key);
    }

    double time(const std::string& key) {
        auto v = optional_time(key);
        if (!v) fail(field(key), "missing (or " + key + "_days)");
        return *v;
    }

    double required(const std::string& key) {
        if (!has(key)) fail(field(key), "missing");
        return number(key);
    }

    void finish() const {
        for (const auto& [key, _] : j_.items())
            if (!seen_.count(key)) fail(field(key), "unknown key");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void check(bool ok, const std::string& field, const std::string& what) {
    if (!ok) fail(field, what);
}

std::string locate(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

double ScenarioConfig::strip_tolerance() const { return target_tol.value_or(kDefaultStripTolerance); }

ScenarioConfig parse_scenario_config(std::string_view text, std::string_view source) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string(source) + ": syntax error at " + locate(text, e.byte > 0 ? e.byte - 1 : 0) +
                          ": " + e.what());
    }

    try {
        ScenarioConfig cfg;
        ObjectReader top(root, "");
        check(top.has("market"), "market", "missing");
        check(top.has("position"), "position", "missing");

        ObjectReader market(top.raw("market"), "market");
        MarketParams m;
        const bool has_rf = market.has("r_f");
        const bool has_pair = market.has("r_x") || market.has("r_y");
        check(has_rf != has_pair, "market", "give exactly one of r_f or the pair (r_x, r_y)");
        if (has_rf) {
            m.r_x = market.number("r_f");
            m.r_y = 0.0;
        } else {
            m.r_x = market.required("r_x");
            m.r_y = market.required("r_y");
            cfg.rates_as_pair = true;
        }
        m.sigma = market.required("sigma");
        m.phi = market.optional_number("phi").value_or(0.0);
        check(m.sigma >= 0.0, "market.sigma", "must be >= 0");
        check(m.phi >= 0.0, "market.phi", "must be >= 0");
        market.finish();

        ObjectReader pos(top.raw("position"), "position");
        const double v0 = pos.required("v0");
        const double s0 = pos.required("s0");
        check(v0 > 0.0, "position.v0", "must be > 0");
        check(s0 > 0.0, "position.s0", "must be > 0");
        LpState& lp = cfg.scenario.lp;
        lp.position = pool_from_deposit(v0, s0);
        lp.market = m;
        lp.t = pos.optional_time("t").value_or(0.0);
        lp.maturity_T = pos.time("T");
        lp.locked = true;
        if (pos.has("locked")) {
            const json& v = pos.raw("locked");
            check(v.is_boolean(), "position.locked", "expected true or false");
            lp.locked = v.get<bool>();
        }
        check(lp.t >= 0.0, "position.t", "must be >= 0");
        check(lp.maturity_T >= lp.t, "position.T", "must be >= position.t");
        pos.finish();

        check(top.has("spot"), "spot", "missing");
        lp.s_t = top.number("spot");
        check(lp.s_t > 0.0, "spot", "must be > 0");

        if (top.has("ig")) {
            ObjectReader ig(top.raw("ig"), "ig");
            IgContract c;
            c.notional_v0 = v0;
            c.strike_k = ig.required("k");
            c.t = lp.t;
            const auto big_t = ig.optional_time("T");
            const auto tau = ig.optional_time("tau");
            check(big_t.has_value() != tau.has_value(), "ig", "give exactly one of T or tau");
            c.maturity_T = big_t ? *big_t : lp.t + *tau;
            check(c.strike_k > 0.0, "ig.k", "must be > 0");
            check(c.maturity_T >= c.t, "ig.T", "must be >= position.t");
            ig.finish();
            cfg.scenario.ig = c;
        }

        if (top.has("mc")) {
            ObjectReader mc(top.raw("mc"), "mc");
            McConfig c;
            auto count = [&](const char* key, auto fallback) -> decltype(fallback) {
                if (!mc.has(key)) return fallback;
                const json& v = mc.raw(key);
                check(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0), mc.field(key),
                      "expected a non-negative integer");
                return static_cast<decltype(fallback)>(v.get<unsigned long long>());
            };
            c.n_paths = count("n_paths", c.n_paths);
            c.seed = count("seed", c.seed);
            c.workers = count("workers", c.workers);
            if (mc.has("antithetic")) {
                const json& v = mc.raw("antithetic");
                check(v.is_boolean(), "mc.antithetic", "expected true or false");
                c.antithetic = v.get<bool>();
            }
            check(c.n_paths >= 1, "mc.n_paths", "must be >= 1");
            check(c.workers >= 1, "mc.workers", "must be >= 1");
            mc.finish();
            cfg.mc = c;
        }

        if (top.has("quadrature")) {
            ObjectReader q(top.raw("quadrature"), "quadrature");
            cfg.target_tol = q.optional_number("target_tol");
            if (cfg.target_tol)
                check(*cfg.target_tol > 0.0 && *cfg.target_tol <= 1e-2, "quadrature.target_tol",
                      "must lie in (0, 1e-2]");
            q.finish();
        }
        top.finish();
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string(source) + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(source) + ": " + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string(source) + ": " + e.what());
    }
}

ScenarioConfig load_scenario_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_config(ss.str(), path);
}

std::string to_json(const ScenarioConfig& cfg) {
    const LpState& lp = cfg.scenario.lp;
    json market;
    if (cfg.rates_as_pair) {
        market["r_x"] = lp.market.r_x;
        market["r_y"] = lp.market.r_y;
    } else {
        market["r_f"] = lp.market.r_f();
    }
    market["sigma"] = lp.market.sigma;
    market["phi"] = lp.market.phi;

    json root;
    root["market"] = market;
    root["position"] = {{"v0", lp.position.notional_v0}, {"s0", lp.position.entry_price_s0},
                        {"t", lp.t},                     {"T", lp.maturity_T},
                        {"locked", lp.locked}};
    root["spot"] = lp.s_t;
    if (cfg.scenario.ig) root["ig"] = {{"k", cfg.scenario.ig->strike_k}, {"T", cfg.scenario.ig->maturity_T}};
    if (cfg.mc)
        root["mc"] = {{"n_paths", cfg.mc->n_paths},
                      {"seed", cfg.mc->seed},
                      {"antithetic", cfg.mc->antithetic},
                      {"workers", cfg.mc->workers}};
    if (cfg.target_tol) root["quadrature"] = {{"target_tol", *cfg.target_tol}};
    return root.dump(2) + "\n";
}

}  // namespace ammgreeks
