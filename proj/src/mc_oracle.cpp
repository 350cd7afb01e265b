#include "ammgreeks/mc_oracle.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "ammgreeks/error.hpp"
#include "ammgreeks/kernels.hpp"
#include "ammgreeks/payoff.hpp"

namespace ammgreeks {

void validate(const McConfig& cfg) {
    detail::require(cfg.n_paths >= 1, "mc: n_paths must be >= 1");
    detail::require(cfg.workers >= 1, "mc: workers must be >= 1");
}

double McEstimate::z_score(double reference) const {
    const double diff = mean - reference;
    if (std_error > 0.0) return diff / std_error;
    return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
}

std::uint64_t CounterRng::mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t index) const {
    constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    return mix(mix(seed) + (index + 1) * kGolden);
}

double CounterRng::uniform(std::uint64_t index) const {
    const std::uint64_t k = bits(index) >> 12;
    return static_cast<double>(2 * k + 1) * 0x1p-53;
}

double CounterRng::normal(std::uint64_t index) const { return inverse_normal_cdf(uniform(index)); }

double inverse_normal_cdf(double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("inverse_normal_cdf: u must lie in (0, 1)");
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
}

double sample_terminal(double s_t, const MarketParams& market, double tau, double draw) {
    detail::require_positive(s_t, "s_t");
    detail::require_non_negative(tau, "tau");
    if (tau == 0.0) return s_t;
    const double s = market.sigma;
    return s_t * std::exp((market.r_f() - 0.5 * s * s) * tau + s * std::sqrt(tau) * draw);
}

std::string_view to_string(PayoffKind kind) {
    switch (kind) {
        case PayoffKind::locked_lp: return "locked_lp";
        case PayoffKind::ig: return "ig";
        case PayoffKind::sqrt_moment: return "sqrt_moment";
        case PayoffKind::forward: return "forward";
        case PayoffKind::vanilla_call: return "vanilla_call";
        case PayoffKind::vanilla_put: return "vanilla_put";
    }
    return "?";
}

namespace {

// Terminal payoff with its discounting folded in, plus the horizon and spot
// it is sampled from.
struct PathPayoff {
    PayoffKind kind;
    double s_t;
    double tau;
    MarketParams market;
    double discount;
    double v0 = 0.0;
    double reference = 0.0;  // S0, K or vanilla strike
    double fee_leg = 0.0;    // phi T, locked LP only

    double operator()(double s_T) const {
        switch (kind) {
            case PayoffKind::locked_lp:
                return discount * v0 * (std::sqrt(s_T / reference) + fee_leg);
            case PayoffKind::ig:
                return discount * v0 * impermanent_gain(s_T / reference - 1.0);
            case PayoffKind::sqrt_moment: return std::sqrt(s_T);
            case PayoffKind::forward: return s_T;
            case PayoffKind::vanilla_call: return discount * std::max(s_T - reference, 0.0);
            case PayoffKind::vanilla_put: return discount * std::max(reference - s_T, 0.0);
        }
        return NAN;
    }
};

PathPayoff make_payoff(const PayoffSpec& spec, const Scenario& scenario) {
    const auto& lp = scenario.lp;
    validate(lp);
    PathPayoff p{spec.kind, lp.s_t, lp.tau(), lp.market, 1.0};
    switch (spec.kind) {
        case PayoffKind::locked_lp:
            p.v0 = lp.position.notional_v0;
            p.reference = lp.position.entry_price_s0;
            p.fee_leg = lp.market.phi * lp.maturity_T;
            break;
        case PayoffKind::ig: {
            const auto& ig = scenario.ig_contract();
            validate(ig);
            p.tau = ig.tau();
            p.v0 = ig.notional_v0;
            p.reference = ig.strike_k;
            break;
        }
        case PayoffKind::sqrt_moment:
        case PayoffKind::forward: break;
        case PayoffKind::vanilla_call:
        case PayoffKind::vanilla_put:
            detail::require_positive(spec.strike, "strike");
            p.reference = spec.strike;
            break;
    }
    const bool discounted = spec.kind != PayoffKind::sqrt_moment && spec.kind != PayoffKind::forward;
    if (discounted) p.discount = std::exp(-p.market.r_f() * p.tau);
    return p;
}

template <typename Reducer>
McEstimate run(const PayoffSpec& spec, const Scenario& scenario, const McConfig& cfg, Reducer reduce) {
    validate(cfg);
    const PathPayoff payoff = make_payoff(spec, scenario);
    const CounterRng rng{cfg.seed};
    std::atomic<bool> non_finite{false};

    auto sample = [&](std::size_t i) {
        const double z = rng.normal(i);
        double x = payoff(sample_terminal(payoff.s_t, payoff.market, payoff.tau, z));
        if (cfg.antithetic) x = 0.5 * (x + payoff(sample_terminal(payoff.s_t, payoff.market, payoff.tau, -z)));
        if (!std::isfinite(x)) {
            non_finite.store(true, std::memory_order_relaxed);
            return 0.0;
        }
        return x;
    };

    const kernels::Moments m = reduce(sample, static_cast<std::size_t>(cfg.n_paths));
    if (non_finite.load()) throw OverflowError("mc: payoff evaluated to a non-finite value");

    McEstimate est;
    est.mean = m.mean;
    est.std_error = std::sqrt(m.variance() / static_cast<double>(m.count));
    est.n_effective = cfg.effective_draws();
    return est;
}

}  // namespace

McEstimate mc_price(const PayoffSpec& payoff, const Scenario& scenario, const McConfig& cfg) {
    return run(payoff, scenario, cfg, [&](auto& sample, std::size_t n) {
        return kernels::sample_moments_omp(sample, n, cfg.workers);
    });
}

McEstimate mc_price_serial(const PayoffSpec& payoff, const Scenario& scenario, const McConfig& cfg) {
    return run(payoff, scenario, cfg,
               [](auto& sample, std::size_t n) { return kernels::sample_moments_serial(sample, n); });
}

std::string_view to_string(PricerId id) {
    switch (id) {
        case PricerId::unlocked_lp: return "unlocked_lp";
        case PricerId::locked_lp: return "locked_lp";
        case PricerId::ig: return "ig";
    }
    return "?";
}

std::string_view to_string(GreekId id) {
    switch (id) {
        case GreekId::delta: return "delta";
        case GreekId::gamma: return "gamma";
        case GreekId::vega: return "vega";
        case GreekId::theta: return "theta";
        case GreekId::rho: return "rho";
    }
    return "?";
}

double closed_form_price(PricerId pricer, const Scenario& scenario) {
    switch (pricer) {
        case PricerId::unlocked_lp: {
            LpState s = scenario.lp;
            s.locked = false;
            return price_unlocked_lp(s);
        }
        case PricerId::locked_lp: {
            LpState s = scenario.lp;
            s.locked = true;
            return price_locked_lp(s);
        }
        case PricerId::ig: return price_ig(scenario.ig_contract(), scenario.lp.s_t, scenario.market());
    }
    throw DomainError("unknown pricer");
}

namespace {

// Copy of the scenario with one input shifted by `shift`.
Scenario shifted(const Scenario& base, PricerId pricer, GreekId which, double shift) {
    Scenario s = base;
    switch (which) {
        case GreekId::delta:
        case GreekId::gamma: s.lp.s_t += shift; break;
        case GreekId::vega: s.lp.market.sigma += shift; break;
        case GreekId::rho: s.lp.market.r_x += shift; break;
        case GreekId::theta:
            if (pricer == PricerId::ig) s.ig->t += shift;
            else s.lp.t += shift;
            break;
    }
    return s;
}

void check_step(const Scenario& s, PricerId pricer, GreekId which, double h) {
    auto collapse = [&](const char* what) {
        throw PreconditionError(std::string("fd_greek: step ") + std::to_string(h) + " " + what);
    };
    switch (which) {
        case GreekId::delta:
        case GreekId::gamma:
            if (!(s.lp.s_t - h > 0.0)) collapse("drives s_t non-positive");
            break;
        case GreekId::vega:
            if (s.lp.market.sigma - h < 0.0) collapse("drives sigma negative");
            break;
        case GreekId::rho: break;
        case GreekId::theta: {
            const double t = pricer == PricerId::ig ? s.ig->t : s.lp.t;
            const double big_t = pricer == PricerId::ig ? s.ig->maturity_T : s.lp.maturity_T;
            if (t - h < 0.0) collapse("drives t negative");
            if (t + h > big_t) collapse("moves t past maturity");
            break;
        }
    }
}

}  // namespace

double fd_greek(PricerId pricer, const Scenario& scenario, GreekId which, double bump) {
    if (!(bump >= 1e-8 && bump <= 1e-2)) throw DomainError("fd_greek: bump must lie in [1e-8, 1e-2]");
    if (pricer == PricerId::ig) scenario.ig_contract();

    double x = 0.0;
    switch (which) {
        case GreekId::delta:
        case GreekId::gamma: x = scenario.lp.s_t; break;
        case GreekId::vega: x = scenario.lp.market.sigma; break;
        case GreekId::rho: x = scenario.lp.market.r_f(); break;
        case GreekId::theta: x = pricer == PricerId::ig ? scenario.ig->t : scenario.lp.t; break;
    }
    const bool spot = which == GreekId::delta || which == GreekId::gamma;
    double h = spot ? bump * x : bump * std::max(std::abs(x), 1.0);
    // Round the step so x + h is exact and the divisor matches the move.
    volatile double moved = x + h;
    h = moved - x;
    check_step(scenario, pricer, which, h);

    const double up = closed_form_price(pricer, shifted(scenario, pricer, which, h));
    const double down = closed_form_price(pricer, shifted(scenario, pricer, which, -h));
    if (which == GreekId::gamma) {
        const double mid = closed_form_price(pricer, scenario);
        return (up - 2.0 * mid + down) / (h * h);
    }
    return (up - down) / (2.0 * h);
}

}  // namespace ammgreeks
