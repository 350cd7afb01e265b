#pragma once

#include <optional>

#include "ammgreeks/amm_core.hpp"

namespace ammgreeks {

/// Risk-neutral model inputs. Only the rate differential r_f = r_x - r_y
/// enters any price.
struct MarketParams {
    double r_x = 0.0;    // lending rate of token x, decimal per year
    double r_y = 0.0;    // lending rate of token y, decimal per year
    double sigma = 0.0;  // lognormal volatility of S, per sqrt(year)
    double phi = 0.0;    // pool fee APY

    double r_f() const { return r_x - r_y; }

    /// Market quoted by the rate differential alone (r_x := r_f, r_y := 0).
    static MarketParams from_rf(double r_f, double sigma, double phi = 0.0) {
        return {r_f, 0.0, sigma, phi};
    }
};

/// A priced LP scenario.
struct LpState {
    PoolPosition position;
    MarketParams market;
    double s_t = 0.0;
    double t = 0.0;           // years since deposit
    double maturity_T = 0.0;  // unlock time, years
    bool locked = false;

    double tau() const { return maturity_T - t; }
};

/// Impermanent Gain terms: pays V0 * IG(S_T / K - 1) at maturity_T.
struct IgContract {
    double notional_v0 = 0.0;
    double strike_k = 0.0;
    double maturity_T = 0.0;
    double t = 0.0;

    double tau() const { return maturity_T - t; }
};

/// Everything needed to price any of the strategies: the LP scenario plus an
/// optional IG contract sharing its market.
struct Scenario {
    LpState lp;
    std::optional<IgContract> ig;

    const MarketParams& market() const { return lp.market; }
    /// Throws DomainError when the scenario carries no IG contract.
    const IgContract& ig_contract() const;
};

/// beta = exp(-(r_f/2 + sigma^2/8) tau) discounts the sqrt-price leg,
/// gamma_disc = exp(-r_f tau) is the plain discount factor.
struct DecayFactors {
    double beta;
    double gamma_disc;
};

void validate(const MarketParams& market);
void validate(const LpState& state);
void validate(const IgContract& contract);

DecayFactors decay_factors(const MarketParams& market, double tau);

/// E_Q[sqrt(S_T)] = sqrt(s_t) exp((r_f/2 - sigma^2/8) tau).
double expected_sqrt_price(double s_t, const MarketParams& market, double tau);

/// E_Q[S_T] = s_t exp(r_f tau).
double forward_price(double s_t, const MarketParams& market, double tau);

/// Redeemable position: worth its reserves plus accrued fees.
double price_unlocked_lp(const LpState& state);

/// Discounted risk-neutral value of the position redeemable only at
/// maturity_T: V0 (sqrt(s_t/s0) beta + phi T gamma_disc).
double price_locked_lp(const LpState& state);

/// Discounted risk-neutral value of the IG payoff:
/// V0 (gamma_disc / 2 + s_t / (2K) - sqrt(s_t / K) beta).
double price_ig(const IgContract& contract, double s_t, const MarketParams& market);

}  // namespace ammgreeks
