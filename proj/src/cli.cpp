#include "ammgreeks/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ammgreeks/csv.hpp"
#include "ammgreeks/error.hpp"
#include "ammgreeks/greeks.hpp"
#include "ammgreeks/payoff.hpp"
#include "ammgreeks/replication.hpp"
#include "ammgreeks/verify.hpp"

namespace ammgreeks::cli {

namespace {

enum class Strategy { unlocked_lp, locked_lp, ig };

const std::map<std::string, Strategy> kStrategies{
    {"unlocked-lp", Strategy::unlocked_lp},
    {"locked-lp", Strategy::locked_lp},
    {"ig", Strategy::ig},
};

struct Options {
    std::string config;
    std::string strategy;
    std::string figure;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> paths;
    std::optional<int> workers;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::unlocked_lp: return "unlocked-lp";
        case Strategy::locked_lp: return "locked-lp";
        case Strategy::ig: return "ig";
    }
    return "?";
}

std::string fmt(double v) { return csv::number(v); }

Strategy pick_strategy(const Options& opt, const ScenarioConfig& cfg) {
    if (opt.strategy.empty()) return cfg.scenario.lp.locked ? Strategy::locked_lp : Strategy::unlocked_lp;
    return kStrategies.at(opt.strategy);
}

LpState lp_with_lock(const ScenarioConfig& cfg, bool locked) {
    LpState lp = cfg.scenario.lp;
    lp.locked = locked;
    return lp;
}

/// Output file if --out was given, otherwise the fallback stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw UsageError("cannot open output file " + path);
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void echo_inputs(std::ostream& out, const ScenarioConfig& cfg, Strategy strategy) {
    const auto& lp = cfg.scenario.lp;
    const auto& m = lp.market;
    out << "inputs\n";
    out << "  r_x     " << fmt(m.r_x) << "\n  r_y     " << fmt(m.r_y) << "\n  r_f     " << fmt(m.r_f())
        << "\n  sigma   " << fmt(m.sigma) << "\n  phi     " << fmt(m.phi) << "\n";
    out << "  v0      " << fmt(lp.position.notional_v0) << "\n  s0      " << fmt(lp.position.entry_price_s0)
        << "\n  s_t     " << fmt(lp.s_t) << "\n";
    if (strategy == Strategy::ig) {
        const auto& ig = cfg.scenario.ig_contract();
        out << "  k       " << fmt(ig.strike_k) << "\n  t       " << fmt(ig.t) << "\n  T       "
            << fmt(ig.maturity_T) << "\n  tau     " << fmt(ig.tau()) << "\n";
    } else {
        out << "  t       " << fmt(lp.t) << "\n  T       " << fmt(lp.maturity_T) << "\n  tau     "
            << fmt(lp.tau()) << "\n";
    }
}

double strategy_tau(const ScenarioConfig& cfg, Strategy strategy) {
    return strategy == Strategy::ig ? cfg.scenario.ig_contract().tau() : cfg.scenario.lp.tau();
}

int cmd_price(const Options& opt, const ScenarioConfig& cfg, std::ostream& out) {
    const Strategy strategy = pick_strategy(opt, cfg);
    const auto& s = cfg.scenario;
    double price = 0.0;
    switch (strategy) {
        case Strategy::unlocked_lp: price = price_unlocked_lp(lp_with_lock(cfg, false)); break;
        case Strategy::locked_lp: price = price_locked_lp(lp_with_lock(cfg, true)); break;
        case Strategy::ig: price = price_ig(s.ig_contract(), s.lp.s_t, s.market()); break;
    }
    const auto d = decay_factors(s.market(), strategy_tau(cfg, strategy));

    const char* name = strategy_name(strategy);
    out << "strategy  " << name << "\nprice     " << fmt(price) << "\nbeta      " << fmt(d.beta) << "\ngamma     " << fmt(d.gamma_disc)
        << "\n";
    echo_inputs(out, cfg, strategy);

    Sink sink(opt.out, out);
    csv::RowWriter w(sink.stream());
    w.header({"strategy", "price", "beta", "gamma", "s_t", "tau"});
    w.row(name, price, d.beta, d.gamma_disc, s.lp.s_t, strategy_tau(cfg, strategy));
    return kSuccess;
}

GreeksReport strategy_greeks(Strategy strategy, const ScenarioConfig& cfg) {
    const auto& s = cfg.scenario;
    switch (strategy) {
        case Strategy::unlocked_lp: return greeks_unlocked_lp(lp_with_lock(cfg, false));
        case Strategy::locked_lp: return greeks_locked_lp(lp_with_lock(cfg, true));
        case Strategy::ig: return greeks_ig(s.ig_contract(), s.lp.s_t, s.market());
    }
    return {};
}

void write_greeks(std::ostream& os, const GreeksReport& g) {
    csv::RowWriter w(os);
    w.header({"greek", "raw", "display", "display_unit"});
    w.row("delta", g.delta, g.delta, "per unit price");
    w.row("delta_1pct", g.delta_pct, g.delta_pct, "per 1% move");
    w.row("gamma", g.gamma, g.gamma, "per unit price^2");
    w.row("gamma_1pct", g.gamma_pct, g.gamma_pct, "per (1% move)^2");
    w.row("vega", g.vega, g.vega_pct(), "per 1% vol");
    w.row("theta", g.theta, g.theta_daily(), "per day");
    w.row("rho", g.rho, g.rho_pct(), "per 1% rate");
}

int cmd_greeks(const Options& opt, const ScenarioConfig& cfg, std::ostream& out) {
    const Strategy strategy = pick_strategy(opt, cfg);
    const auto g = strategy_greeks(strategy, cfg);
    Sink sink(opt.out, out);
    write_greeks(sink.stream(), g);
    return kSuccess;
}

int cmd_hedge(const Options& opt, const ScenarioConfig& cfg, std::ostream& out) {
    const auto& s = cfg.scenario;
    if (!s.lp.locked) throw UsageError("hedge: position must be locked");
    if (!s.ig) throw UsageError("hedge: scenario needs an ig block");
    HedgedGreeks h;
    try {
        h = hedge_report(s.lp, *s.ig, s.market(), s.lp.s_t);
    } catch (const PreconditionError& e) {
        throw UsageError(e.what());
    }

    Sink sink(opt.out, out);
    csv::RowWriter w(sink.stream());
    w.header({"greek", "locked_lp", "ig", "total", "predicted"});
    w.row("delta", h.lp.delta, h.ig.delta, h.total.delta, h.delta_pred);
    w.row("gamma", h.lp.gamma, h.ig.gamma, h.total.gamma, 0.0);
    w.row("vega", h.lp.vega, h.ig.vega, h.total.vega, 0.0);
    w.row("theta", h.lp.theta, h.ig.theta, h.total.theta, h.theta_pred);
    w.row("rho", h.lp.rho, h.ig.rho, h.total.rho, h.rho_pred);
    if (!h.gamma_vega_neutral(1e-10)) {
        out << "hedge: gamma/vega sums not neutral\n";
        return kVerificationFailed;
    }
    return kSuccess;
}

int cmd_figure(const Options& opt, const ScenarioConfig& cfg, std::ostream& out) {
    const auto ids = figure_ids();
    if (std::find(ids.begin(), ids.end(), opt.figure) == ids.end()) {
        std::string list;
        for (const auto& id : ids) list += (list.empty() ? "" : ", ") + id;
        throw UsageError("unknown figure id '" + opt.figure + "'; valid ids: " + list);
    }
    Sink sink(opt.out, out);
    write_figure(opt.figure, cfg, sink.stream());
    return kSuccess;
}

int cmd_verify(const Options& opt, const ScenarioConfig& cfg, std::ostream& out) {
    if (!cfg.mc && !opt.paths) throw UsageError("verify: scenario needs an mc block (or pass --paths)");
    McConfig mc = cfg.mc.value_or(McConfig{});
    if (opt.paths) mc.n_paths = *opt.paths;
    if (opt.seed) mc.seed = *opt.seed;
    if (opt.workers) mc.workers = *opt.workers;
    validate(mc);

    const auto results = run_verification(cfg, mc);
    if (!opt.out.empty()) {
        Sink sink(opt.out, out);
        write_report_csv(sink.stream(), results);
    }
    std::size_t failed = 0;
    char line[256];
    for (const auto& r : results) {
        const char* status = r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
        std::snprintf(line, sizeof line, "%-4s %-28s closed=%-22.15g est=%-22.15g z=%+.3f\n", status, r.name.c_str(),
                      r.closed_form, r.estimate, r.z_score);
        out << line;
        if (!r.pass) ++failed;
    }
    out << results.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? kSuccess : kVerificationFailed;
}

int cmd_table(const Options& opt, const ScenarioConfig& cfg, std::ostream& out) {
    const auto& s = cfg.scenario;
    const auto table =
        greeks_table(lp_with_lock(cfg, false), lp_with_lock(cfg, true), s.ig_contract(), s.market(), s.lp.s_t);
    if (opt.out.empty()) {
        out << table.to_text();
    } else {
        Sink sink(opt.out, out);
        sink.stream() << table.to_csv();
    }
    return kSuccess;
}

int cmd_grid(const Options& opt, const ScenarioConfig& cfg, std::ostream& out) {
    const Strategy strategy = pick_strategy(opt, cfg);
    const auto& s = cfg.scenario;
    const double centre = strategy == Strategy::ig ? s.ig_contract().strike_k : s.lp.position.entry_price_s0;
    const auto grid = build_strike_grid(centre, s.market().sigma, strategy_tau(cfg, strategy), cfg.strip_tolerance());
    Sink sink(opt.out, out);
    grid.write_csv(sink.stream());
    return kSuccess;
}

using Command = std::function<int(const Options&, const ScenarioConfig&, std::ostream&)>;

}  // namespace

std::vector<std::string> figure_ids() {
    std::vector<std::string> ids{"il-curve"};
    for (const char* prefix : {"unlocked-", "lp-", "ig-"})
        for (const char* what : {"price", "delta", "delta-pct", "gamma", "gamma-pct", "vega", "theta", "rho"})
            ids.push_back(std::string(prefix) + what);
    return ids;
}

void write_figure(const std::string& id, const ScenarioConfig& cfg, std::ostream& os) {
    csv::RowWriter w(os);
    if (id == "il-curve") {
        w.header({"r", "value"});
        for (const auto& [r, il] : il_curve(-1.0, 3.0, 401)) w.row(r, il);
        return;
    }

    const auto dash = id.find('-');
    const std::string prefix = id.substr(0, dash);
    const std::string what = id.substr(dash + 1);
    static const std::map<std::string, int> kWhat{{"price", 0},     {"delta", 1}, {"delta-pct", 2},
                                                  {"gamma", 3},     {"gamma-pct", 4}, {"vega", 5},
                                                  {"theta", 6},     {"rho", 7}};
    if ((prefix != "unlocked" && prefix != "lp" && prefix != "ig") || !kWhat.count(what))
        throw std::out_of_range("unknown figure id " + id);
    const int column = kWhat.at(what);
    const auto& s = cfg.scenario;

    auto value_at = [&](double spot) {
        GreeksReport g;
        double price = 0.0;
        LpState lp = s.lp;
        lp.s_t = spot;
        if (prefix == "unlocked") {
            lp.locked = false;
            g = greeks_unlocked_lp(lp);
            price = price_unlocked_lp(lp);
        } else if (prefix == "lp") {
            lp.locked = true;
            g = greeks_locked_lp(lp);
            price = price_locked_lp(lp);
        } else {
            g = greeks_ig(s.ig_contract(), spot, s.market());
            price = price_ig(s.ig_contract(), spot, s.market());
        }
        const double values[] = {price, g.delta, g.delta_pct, g.gamma, g.gamma_pct, g.vega, g.theta, g.rho};
        return values[column];
    };

    const double ref = prefix == "ig" ? s.ig_contract().strike_k : s.lp.position.entry_price_s0;
    constexpr int kPoints = 301;
    const double lo = 0.1 * ref, hi = 3.0 * ref;
    w.header({"s_t", "value"});
    for (int i = 0; i < kPoints; ++i) {
        const double spot = i == kPoints - 1 ? hi : lo + (hi - lo) * i / (kPoints - 1);
        w.row(spot, value_at(spot));
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pricing, greeks and verification for constant-product AMM LP positions and Impermanent Gain",
                 "amm-greeks"};
    app.require_subcommand(1);
    Options opt;
    std::map<std::string, Command> commands{
        {"price", cmd_price}, {"greeks", cmd_greeks}, {"hedge", cmd_hedge}, {"figure", cmd_figure},
        {"verify", cmd_verify}, {"table", cmd_table}, {"grid", cmd_grid},
    };
    const std::map<std::string, std::string> help{
        {"price", "price a strategy"},
        {"greeks", "closed-form greeks of a strategy, raw and display-scaled"},
        {"hedge", "greeks of a locked LP hedged with IG struck at entry"},
        {"figure", "write the curve behind a figure as CSV"},
        {"verify", "run the Monte Carlo / finite-difference / replication oracle suite"},
        {"table", "greeks of all three strategies side by side"},
        {"grid", "dump the replication strike grid as CSV"},
    };
    std::vector<std::string> strategy_names;
    for (const auto& [name, _] : kStrategies) strategy_names.push_back(name);

    for (const auto& [name, _] : commands) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", opt.config, "scenario JSON file")->required();
        sub->add_option("--strategy", opt.strategy, "unlocked-lp | locked-lp | ig")
            ->check(CLI::IsMember(strategy_names));
        sub->add_option("--figure", opt.figure, "figure id");
        sub->add_option("--out", opt.out, "output path");
        sub->add_option("--seed", opt.seed, "Monte Carlo seed");
        sub->add_option("--paths", opt.paths, "Monte Carlo paths")->check(CLI::PositiveNumber);
        sub->add_option("--workers", opt.workers, "parallel lanes")->check(CLI::PositiveNumber);
        if (name == "figure") sub->get_option("--figure")->required();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kUsageError;
    }

    try {
        const auto chosen = app.get_subcommands().front()->get_name();
        const auto cfg = load_scenario_config(opt.config);
        if (opt.strategy == "ig" && !cfg.scenario.ig) throw UsageError("strategy ig needs an ig block in the scenario");
        return commands.at(chosen)(opt, cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kUsageError;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kDomainError;
    } catch (const PreconditionError& e) {
        err << "domain error: " << e.what() << "\n";
        return kDomainError;
    } catch (const OverflowError& e) {
        err << "domain error: " << e.what() << "\n";
        return kDomainError;
    }
}

}  // namespace ammgreeks::cli
