#include "ammgreeks/analytics.hpp"

#include <cmath>
#include <string>

#include "ammgreeks/error.hpp"

namespace ammgreeks {

namespace {

double sqrt_leg_rate(const MarketParams& m) {
    return m.r_f() / 2.0 + m.sigma * m.sigma / 8.0;
}

void require_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw DomainError("time to maturity must be >= 0, got " + std::to_string(tau));
}

}  // namespace

const IgContract& Scenario::ig_contract() const {
    if (!ig) throw DomainError("scenario has no IG contract");
    return *ig;
}

void validate(const MarketParams& market) {
    detail::require(std::isfinite(market.r_x) && std::isfinite(market.r_y), "rates must be finite");
    detail::require_non_negative(market.sigma, "sigma");
    detail::require_non_negative(market.phi, "phi");
}

void validate(const LpState& state) {
    validate(state.market);
    detail::require_positive(state.position.notional_v0, "v0");
    detail::require_positive(state.position.entry_price_s0, "s0");
    detail::require_positive(state.s_t, "s_t");
    detail::require_non_negative(state.t, "t");
    require_tau(state.tau());
}

void validate(const IgContract& contract) {
    detail::require_positive(contract.notional_v0, "v0");
    detail::require_positive(contract.strike_k, "k");
    detail::require_non_negative(contract.t, "t");
    require_tau(contract.tau());
}

DecayFactors decay_factors(const MarketParams& market, double tau) {
    validate(market);
    require_tau(tau);
    return {std::exp(-sqrt_leg_rate(market) * tau), std::exp(-market.r_f() * tau)};
}

double expected_sqrt_price(double s_t, const MarketParams& market, double tau) {
    detail::require_positive(s_t, "s_t");
    validate(market);
    require_tau(tau);
    const double sigma2 = market.sigma * market.sigma;
    return std::sqrt(s_t) * std::exp((market.r_f() / 2.0 - sigma2 / 8.0) * tau);
}

double forward_price(double s_t, const MarketParams& market, double tau) {
    detail::require_positive(s_t, "s_t");
    validate(market);
    require_tau(tau);
    return s_t * std::exp(market.r_f() * tau);
}

double price_unlocked_lp(const LpState& state) {
    if (state.locked) throw DomainError("price_unlocked_lp called with a locked state");
    validate(state);
    return lp_value(state.position, state.s_t, state.t, FeeParams{state.market.phi});
}

double price_locked_lp(const LpState& state) {
    if (!state.locked) throw DomainError("price_locked_lp called with an unlocked state");
    validate(state);
    const auto d = decay_factors(state.market, state.tau());
    const auto& pos = state.position;
    return pos.notional_v0 * (std::sqrt(state.s_t / pos.entry_price_s0) * d.beta +
                              state.market.phi * state.maturity_T * d.gamma_disc);
}

double price_ig(const IgContract& contract, double s_t, const MarketParams& market) {
    validate(contract);
    validate(market);
    detail::require_positive(s_t, "s_t");
    const double tau = contract.tau();
    const double root_a = std::sqrt(s_t / contract.strike_k);
    // Regrouped as (gamma - 1)/2 + (1 - sqrt a)^2 / 2 + sqrt a (1 - beta) so the
    // O(V0) terms cancel analytically instead of in floating point.
    const double disc_leg = 0.5 * std::expm1(-market.r_f() * tau);
    const double convex_leg = 0.5 * (1.0 - root_a) * (1.0 - root_a);
    const double decay_leg = -root_a * std::expm1(-sqrt_leg_rate(market) * tau);
    return contract.notional_v0 * (disc_leg + convex_leg + decay_leg);
}

}  // namespace ammgreeks
