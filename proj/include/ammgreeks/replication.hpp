#pragma once

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "ammgreeks/analytics.hpp"

namespace ammgreeks {

/// Second derivative of the IL payoff in the terminal price, evaluated at
/// strike k: -1 / (4 k^{3/2} sqrt(s0)). Negative everywhere.
double strip_density(double k_strike, double s0);

enum class StripLeg {
    put,       // strike below s0
    call,      // strike above s0
    straddle,  // the s0 node itself: half a put plus half a call
};

std::string_view to_string(StripLeg leg);

/// Discrete strip of options over log-strike. Nodes sit at
/// K = s0 exp(+-u(xi)), xi on a uniform grid of nodes_per_side intervals in
/// [0, 1] and u(xi) = half_width sinh(c xi) / sinh(c), which clusters strikes
/// around s0. Weights are trapezoid weights times dK/dxi times |h''(K)|.
struct StrikeGrid {
    double s0 = 0.0;
    std::vector<double> strikes;  // strictly ascending
    std::vector<double> weights;  // > 0
    std::vector<StripLeg> legs;
    double lower_cut = 0.0;
    double upper_cut = 0.0;
    double half_width = 0.0;      // log-units either side of s0
    double clustering = 0.0;      // c
    std::size_t nodes_per_side = 0;
    std::string_view scheme = "trapezoid-sinh-log-strike";
    /// Richardson estimate of the payoff-assembly error (n vs n/2 nodes)
    /// over the probe prices used to size the grid.
    double error_estimate = 0.0;

    std::size_t size() const { return strikes.size(); }
    /// strike,weight,kind rows with a header.
    void write_csv(std::ostream& os) const;
};

/// Truncation half-width max(8 sigma sqrt(tau), 5) in log-units.
double strike_grid_half_width(double sigma, double tau);

/// Grid with an explicit node count per side; error_estimate is left at 0.
StrikeGrid strike_grid_with_nodes(double s0, double half_width, std::size_t nodes_per_side);

/// Doubles nodes per side until the Richardson difference of the IL
/// reconstruction over 21 probe prices in [s0/10, 10 s0] is below
/// target_tol. The returned grid's error_estimate may exceed target_tol only
/// if the node cap (2^18 per side) is reached.
StrikeGrid build_strike_grid(double s0, double sigma, double tau, double target_tol);

inline constexpr double kDefaultStripTolerance = 1e-6;

struct StripValue {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// h(s0) and h'(s0) of the IL payoff; the strip omits both because they are
/// zero, and the assembly adds whatever floating point leaves of them.
struct ExpansionPoint {
    double value;
    double slope;
};
ExpansionPoint il_expansion_terms(double s0);

/// IL(s_terminal / s0 - 1) assembled from the strip: sum of
/// h''(K) (K - s_T)^+ w below s0 and h''(K) (s_T - K)^+ w above.
StripValue replicate_il_payoff(const StrikeGrid& grid, double s_terminal);

struct VanillaQuote {
    double strike = 0.0;
    double tau = 0.0;
    bool is_call = true;
    double premium = 0.0;
};

/// Lognormal premium on the forward s_t exp(r_f tau), discounted at r_f.
/// Returns discounted intrinsic on the forward when tau or sigma is zero.
VanillaQuote vanilla_price(double strike, double s_t, const MarketParams& market, double tau, bool is_call);

/// Cost of the long strip that replicates the IG payoff:
/// V0 sum |h''(K)| w premium(K). The grid must be centred on the strike.
/// error_estimate combines the n vs n/2 difference and analytic bounds on
/// the strikes beyond the cuts.
StripValue price_ig_via_strip(const IgContract& contract, double s_t, const MarketParams& market,
                              const StrikeGrid& grid, int workers = 1);

/// Single-threaded reference for price_ig_via_strip's summation.
StripValue price_ig_via_strip_serial(const IgContract& contract, double s_t, const MarketParams& market,
                                     const StrikeGrid& grid);

}  // namespace ammgreeks
