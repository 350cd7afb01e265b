#pragma once

#include <cstdint>
#include <string_view>

#include "ammgreeks/analytics.hpp"

namespace ammgreeks {

struct McConfig {
    std::uint64_t n_paths = 100000;
    std::uint64_t seed = 42;
    bool antithetic = false;
    int workers = 1;

    std::uint64_t effective_draws() const { return antithetic ? 2 * n_paths : n_paths; }
};

void validate(const McConfig& cfg);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_effective = 0;

    double z_score(double reference) const;
};

/// Counter-based uniform stream: the draw for path i is the SplitMix64
/// output at stream position i + 1 from a state seeded with mix(seed). No
/// state is carried between paths, so draws do not depend on how paths are
/// split across threads.
struct CounterRng {
    static constexpr std::string_view kName = "splitmix64-counter";
    static constexpr int kVersion = 1;

    std::uint64_t seed;

    static std::uint64_t mix(std::uint64_t z);
    std::uint64_t bits(std::uint64_t index) const;
    /// Open-interval uniform (2k + 1) / 2^53: exactly representable, and so
    /// is its reflection 1 - u.
    double uniform(std::uint64_t index) const;
    /// Standard normal by inverse CDF of uniform(index).
    double normal(std::uint64_t index) const;
};

/// Standard normal quantile.
double inverse_normal_cdf(double u);

/// Exact lognormal terminal price under Q:
/// s_t exp((r_f - sigma^2/2) tau + sigma sqrt(tau) z).
double sample_terminal(double s_t, const MarketParams& market, double tau, double draw);

enum class PayoffKind {
    locked_lp,    // discounted V0 (sqrt(S_T / S0) + phi T)
    ig,           // discounted V0 IG(S_T / K - 1)
    sqrt_moment,  // sqrt(S_T), undiscounted
    forward,      // S_T, undiscounted
    vanilla_call,
    vanilla_put,
};

struct PayoffSpec {
    PayoffKind kind;
    double strike = 0.0;  // vanilla payoffs only
};

std::string_view to_string(PayoffKind kind);

/// Monte Carlo estimate of a terminal payoff over exact GBM draws. Horizon
/// is the IG contract's for `ig`, the LP's otherwise. Deterministic in
/// (seed, n_paths, antithetic) and independent of workers.
McEstimate mc_price(const PayoffSpec& payoff, const Scenario& scenario, const McConfig& cfg);

/// Reference path: identical to mc_price but evaluated on one thread.
McEstimate mc_price_serial(const PayoffSpec& payoff, const Scenario& scenario, const McConfig& cfg);

enum class PricerId { unlocked_lp, locked_lp, ig };
enum class GreekId { delta, gamma, vega, theta, rho };

std::string_view to_string(PricerId id);
std::string_view to_string(GreekId id);

/// Closed-form price selected by id.
double closed_form_price(PricerId pricer, const Scenario& scenario);

/// Central finite difference of a closed-form pricer. Steps are
/// bump * s_t for the spot and bump * max(|x|, 1) for sigma, t and r_f.
/// Theta moves t with the maturity held fixed; rho moves r_x. Throws
/// PreconditionError if a bumped input leaves the domain.
double fd_greek(PricerId pricer, const Scenario& scenario, GreekId which, double bump);

}  // namespace ammgreeks
