#include "ammgreeks/verify.hpp"

#include <cmath>
#include <ostream>

#include "ammgreeks/csv.hpp"
#include "ammgreeks/error.hpp"
#include "ammgreeks/greeks.hpp"
#include "ammgreeks/payoff.hpp"
#include "ammgreeks/replication.hpp"

namespace ammgreeks {

namespace {

constexpr double kFirstOrderTol = 1e-6;
constexpr double kSecondOrderTol = 1e-5;
constexpr double kFirstOrderBump = 1e-5;
constexpr double kSecondOrderBump = 1e-4;
constexpr double kReconstructionTol = 1e-4;
constexpr double kStripPriceRelTol = 1e-2;

CheckResult mc_row(const std::string& name, double closed_form, const McEstimate& est) {
    CheckResult r;
    r.name = name;
    r.closed_form = closed_form;
    r.estimate = est.mean;
    // A zero-variance sample (sigma = 0 or tau = 0) is compared at rounding level.
    r.std_error = std::max(est.std_error, 1e-12 * std::abs(closed_form));
    r.z_score = r.std_error > 0.0 ? (est.mean - closed_form) / r.std_error : 0.0;
    r.pass = std::abs(r.z_score) <= kZThreshold;
    return r;
}

CheckResult deterministic_row(const std::string& name, double closed_form, double estimate, double allowed) {
    CheckResult r;
    r.name = name;
    r.closed_form = closed_form;
    r.estimate = estimate;
    r.std_error = allowed;
    const double diff = estimate - closed_form;
    r.z_score = allowed > 0.0 ? diff / allowed : (diff == 0.0 ? 0.0 : INFINITY);
    r.pass = std::abs(diff) <= allowed;
    return r;
}

Scenario moment_scenario(const MomentCase& c) {
    Scenario s;
    s.lp.position = pool_from_deposit(1.0, c.s_t);
    s.lp.market = c.market;
    s.lp.s_t = c.s_t;
    s.lp.t = 0.0;
    s.lp.maturity_T = c.tau;
    s.lp.locked = true;
    return s;
}

GreeksReport closed_form_report(PricerId pricer, const Scenario& s) {
    switch (pricer) {
        case PricerId::unlocked_lp: {
            LpState lp = s.lp;
            lp.locked = false;
            return greeks_unlocked_lp(lp);
        }
        case PricerId::locked_lp: {
            LpState lp = s.lp;
            lp.locked = true;
            return greeks_locked_lp(lp);
        }
        case PricerId::ig: return greeks_ig(s.ig_contract(), s.lp.s_t, s.market());
    }
    throw DomainError("unknown pricer");
}

}  // namespace

std::vector<MomentCase> standard_moment_cases() {
    return {
        {1000.0, MarketParams::from_rf(0.03, 0.7), 0.25},
        {1000.0, MarketParams::from_rf(-0.05, 1.5), 0.5},
        {250.0, MarketParams::from_rf(0.10, 0.2), 1.0},
        {4000.0, MarketParams::from_rf(0.0, 0.5), 2.0},
        {1000.0, MarketParams::from_rf(0.03, 0.7), 7.0 / 365.0},
    };
}

CheckResult sqrt_moment_check(const std::string& name, const MomentCase& c, const McConfig& cfg,
                              const SqrtMomentFormula& formula) {
    const auto est = mc_price({PayoffKind::sqrt_moment}, moment_scenario(c), cfg);
    return mc_row(name, formula(c.s_t, c.market, c.tau), est);
}

CheckResult forward_moment_check(const std::string& name, const MomentCase& c, const McConfig& cfg) {
    const auto est = mc_price({PayoffKind::forward}, moment_scenario(c), cfg);
    return mc_row(name, forward_price(c.s_t, c.market, c.tau), est);
}

CheckResult price_check(const std::string& name, PayoffKind kind, const Scenario& s, const McConfig& cfg) {
    const auto est = mc_price({kind}, s, cfg);
    const double cf = kind == PayoffKind::ig ? closed_form_price(PricerId::ig, s)
                                             : closed_form_price(PricerId::locked_lp, s);
    return mc_row(name, cf, est);
}

double closed_form_greek(PricerId pricer, GreekId greek, const Scenario& s) {
    const auto g = closed_form_report(pricer, s);
    switch (greek) {
        case GreekId::delta: return g.delta;
        case GreekId::gamma: return g.gamma;
        case GreekId::vega: return g.vega;
        case GreekId::theta: return g.theta;
        case GreekId::rho: return g.rho;
    }
    throw DomainError("unknown greek");
}

CheckResult greek_check(PricerId pricer, GreekId greek, const Scenario& s) {
    const bool second = greek == GreekId::gamma;
    const std::string name = "fd_" + std::string(to_string(pricer)) + "_" + std::string(to_string(greek));
    const double cf = closed_form_greek(pricer, greek, s);
    double fd = 0.0;
    try {
        fd = fd_greek(pricer, s, greek, second ? kSecondOrderBump : kFirstOrderBump);
    } catch (const PreconditionError&) {
        CheckResult r;
        r.name = name;
        r.closed_form = cf;
        r.skipped = true;
        r.pass = true;
        return r;
    }
    const double tol = second ? kSecondOrderTol : kFirstOrderTol;
    // Identically-zero greeks (unlocked vega and rho) have nothing to scale by.
    const double allowed = cf != 0.0 ? tol * std::abs(cf) : 1e-12 * std::abs(closed_form_price(pricer, s));
    return deterministic_row(name, cf, fd, allowed);
}

std::vector<CheckResult> run_verification(const ScenarioConfig& config, const McConfig& cfg) {
    std::vector<CheckResult> out;
    McConfig run_cfg = cfg;
    auto next_cfg = [&] {
        McConfig c = run_cfg;
        ++run_cfg.seed;
        return c;
    };

    const Scenario& s = config.scenario;
    auto cases = standard_moment_cases();
    cases.push_back({s.lp.s_t, s.market(), s.lp.tau()});
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string tag = i + 1 == cases.size() ? "config" : "case" + std::to_string(i + 1);
        out.push_back(sqrt_moment_check("moment_sqrt_" + tag, cases[i], next_cfg()));
        out.push_back(forward_moment_check("moment_forward_" + tag, cases[i], next_cfg()));
    }

    out.push_back(price_check("mc_price_locked_lp", PayoffKind::locked_lp, s, next_cfg()));
    if (s.ig) out.push_back(price_check("mc_price_ig", PayoffKind::ig, s, next_cfg()));

    std::vector<PricerId> pricers{PricerId::unlocked_lp, PricerId::locked_lp};
    if (s.ig) pricers.push_back(PricerId::ig);
    for (auto pricer : pricers)
        for (auto greek : {GreekId::delta, GreekId::gamma, GreekId::vega, GreekId::theta, GreekId::rho})
            out.push_back(greek_check(pricer, greek, s));

    // Payoff reconstruction around the LP entry price.
    {
        const double s0 = s.lp.position.entry_price_s0;
        const auto grid = build_strike_grid(s0, s.market().sigma, s.lp.tau(), config.strip_tolerance());
        double worst = -1.0, worst_cf = 0.0, worst_est = 0.0;
        for (int i = 0; i < 21; ++i) {
            const double s_T = s0 * std::pow(10.0, -1.0 + 0.1 * i);
            const double cf = impermanent_loss(s_T / s0 - 1.0);
            const double est = replicate_il_payoff(grid, s_T).value;
            if (std::abs(est - cf) > worst) {
                worst = std::abs(est - cf);
                worst_cf = cf;
                worst_est = est;
            }
        }
        out.push_back(deterministic_row("strip_il_reconstruction", worst_cf, worst_est, kReconstructionTol));
    }
    if (s.ig) {
        const auto& ig = *s.ig;
        const auto grid = build_strike_grid(ig.strike_k, s.market().sigma, ig.tau(), config.strip_tolerance());
        const double cf = price_ig(ig, s.lp.s_t, s.market());
        const auto strip = price_ig_via_strip(ig, s.lp.s_t, s.market(), grid, cfg.workers);
        out.push_back(deterministic_row("strip_price_ig", cf, strip.value, kStripPriceRelTol * std::abs(cf)));
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

void write_report_csv(std::ostream& os, const std::vector<CheckResult>& results) {
    csv::RowWriter w(os);
    w.header({"check", "closed_form", "mc_mean", "std_error", "z_score", "pass"});
    for (const auto& r : results) {
        if (r.skipped) {
            w.row(r.name, r.closed_form, "", "", "", "skip");
            continue;
        }
        w.row(r.name, r.closed_form, r.estimate, r.std_error, r.z_score, r.pass);
    }
}

}  // namespace ammgreeks
