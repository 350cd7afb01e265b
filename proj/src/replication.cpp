#include "ammgreeks/replication.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "ammgreeks/csv.hpp"
#include "ammgreeks/error.hpp"
#include "ammgreeks/kernels.hpp"

namespace ammgreeks {

namespace {

constexpr double kClustering = 3.0;
constexpr std::size_t kInitialNodes = 16;
constexpr std::size_t kMaxNodes = std::size_t{1} << 18;

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double leg_payoff(StripLeg leg, double strike, double s_terminal) {
    switch (leg) {
        case StripLeg::put: return std::max(strike - s_terminal, 0.0);
        case StripLeg::call: return std::max(s_terminal - strike, 0.0);
        case StripLeg::straddle: return 0.5 * std::abs(s_terminal - strike);
    }
    return 0.0;
}

// Strike integral of |h''(K)| (K - s)^+ over (0, cut] for s < cut, and of
// |h''(K)| (s - K)^+ over [cut, inf) for s > cut: the payoff mass the grid
// cannot see.
double payoff_tail(double s0, double lower_cut, double upper_cut, double s) {
    const double scale = 1.0 / (2.0 * std::sqrt(s0));
    if (s < lower_cut) {
        const double rc = std::sqrt(lower_cut);
        return scale * (rc + s / rc - 2.0 * std::sqrt(s));
    }
    if (s > upper_cut) {
        const double rc = std::sqrt(upper_cut);
        return scale * (s / rc + rc - 2.0 * std::sqrt(s));
    }
    return 0.0;
}

double assemble_il(const StrikeGrid& grid, double s_terminal) {
    const auto term = [&](std::size_t i) {
        return -grid.weights[i] * leg_payoff(grid.legs[i], grid.strikes[i], s_terminal);
    };
    const auto expansion = il_expansion_terms(grid.s0);
    return expansion.value + expansion.slope * (s_terminal - grid.s0) +
           kernels::term_sum_serial(term, grid.size());
}

std::vector<double> probe_prices(double s0) {
    std::vector<double> out(21);
    for (int i = 0; i < 21; ++i) out[static_cast<std::size_t>(i)] = s0 * std::pow(10.0, -1.0 + 0.1 * i);
    return out;
}

template <typename Summer>
StripValue price_strip(const IgContract& contract, double s_t, const MarketParams& market,
                       const StrikeGrid& grid, Summer sum) {
    validate(contract);
    validate(market);
    detail::require_positive(s_t, "s_t");
    if (std::abs(grid.s0 - contract.strike_k) > 1e-12 * contract.strike_k)
        throw DomainError("price_ig_via_strip: grid must be centred on the IG strike");

    const double tau = contract.tau();
    auto strip_cost = [&](const StrikeGrid& g) {
        const auto term = [&](std::size_t i) {
            const double k = g.strikes[i];
            double premium = 0.0;
            switch (g.legs[i]) {
                case StripLeg::put: premium = vanilla_price(k, s_t, market, tau, false).premium; break;
                case StripLeg::call: premium = vanilla_price(k, s_t, market, tau, true).premium; break;
                case StripLeg::straddle:
                    premium = 0.5 * (vanilla_price(k, s_t, market, tau, false).premium +
                                     vanilla_price(k, s_t, market, tau, true).premium);
                    break;
            }
            return g.weights[i] * premium;
        };
        return contract.notional_v0 * sum(term, g.size());
    };

    StripValue out;
    out.value = strip_cost(grid);
    if (grid.nodes_per_side >= 2 && grid.nodes_per_side % 2 == 0) {
        const auto coarse = strike_grid_with_nodes(grid.s0, grid.half_width, grid.nodes_per_side / 2);
        out.error_estimate = std::abs(out.value - strip_cost(coarse));
    }
    // Put premia are convex in K with P(0) = 0 and call premia decrease in K,
    // which bounds the strike mass beyond each cut.
    const double put_cut = vanilla_price(grid.lower_cut, s_t, market, tau, false).premium;
    const double call_cut = vanilla_price(grid.upper_cut, s_t, market, tau, true).premium;
    out.error_estimate += contract.notional_v0 *
                          (put_cut / (2.0 * std::sqrt(grid.s0 * grid.lower_cut)) +
                           call_cut / (2.0 * std::sqrt(grid.s0 * grid.upper_cut)));
    return out;
}

}  // namespace

double strip_density(double k_strike, double s0) {
    detail::require_positive(k_strike, "strike");
    detail::require_positive(s0, "s0");
    return -1.0 / (4.0 * std::pow(k_strike, 1.5) * std::sqrt(s0));
}

std::string_view to_string(StripLeg leg) {
    switch (leg) {
        case StripLeg::put: return "put";
        case StripLeg::call: return "call";
        case StripLeg::straddle: return "straddle";
    }
    return "?";
}

void StrikeGrid::write_csv(std::ostream& os) const {
    csv::RowWriter w(os);
    w.header({"strike", "weight", "kind"});
    for (std::size_t i = 0; i < size(); ++i) w.row(strikes[i], weights[i], to_string(legs[i]));
}

double strike_grid_half_width(double sigma, double tau) {
    detail::require_non_negative(sigma, "sigma");
    detail::require_non_negative(tau, "tau");
    return std::max(8.0 * sigma * std::sqrt(tau), 5.0);
}

StrikeGrid strike_grid_with_nodes(double s0, double half_width, std::size_t nodes_per_side) {
    detail::require_positive(s0, "s0");
    detail::require_positive(half_width, "half_width");
    detail::require(nodes_per_side >= 1, "strike grid needs at least one node per side");

    const double c = kClustering;
    const double n = static_cast<double>(nodes_per_side);
    const double sinh_c = std::sinh(c);
    auto log_offset = [&](double xi) { return half_width * std::sinh(c * xi) / sinh_c; };
    auto log_offset_rate = [&](double xi) { return half_width * c * std::cosh(c * xi) / sinh_c; };
    // One side's contribution at xi = j / n, before the density.
    auto side_weight = [&](std::size_t j, double strike) {
        const double trap = (j == nodes_per_side ? 0.5 : 1.0) / n;
        return trap * strike * log_offset_rate(static_cast<double>(j) / n) *
               std::abs(strip_density(strike, s0));
    };

    StrikeGrid g;
    g.s0 = s0;
    g.half_width = half_width;
    g.clustering = c;
    g.nodes_per_side = nodes_per_side;
    const std::size_t total = 2 * nodes_per_side + 1;
    g.strikes.reserve(total);
    g.weights.reserve(total);
    g.legs.reserve(total);

    for (std::size_t j = nodes_per_side; j >= 1; --j) {
        const double k = s0 * std::exp(-log_offset(static_cast<double>(j) / n));
        g.strikes.push_back(k);
        g.weights.push_back(side_weight(j, k));
        g.legs.push_back(StripLeg::put);
    }
    const double centre = (0.5 / n) * s0 * log_offset_rate(0.0) * std::abs(strip_density(s0, s0));
    g.strikes.push_back(s0);
    g.weights.push_back(2.0 * centre);
    g.legs.push_back(StripLeg::straddle);
    for (std::size_t j = 1; j <= nodes_per_side; ++j) {
        const double k = s0 * std::exp(log_offset(static_cast<double>(j) / n));
        g.strikes.push_back(k);
        g.weights.push_back(side_weight(j, k));
        g.legs.push_back(StripLeg::call);
    }
    g.lower_cut = g.strikes.front();
    g.upper_cut = g.strikes.back();
    return g;
}

StrikeGrid build_strike_grid(double s0, double sigma, double tau, double target_tol) {
    detail::require_positive(s0, "s0");
    if (!(target_tol > 0.0 && target_tol <= 1e-2))
        throw DomainError("target_tol must lie in (0, 1e-2], got " + std::to_string(target_tol));
    const double half_width = strike_grid_half_width(sigma, tau);
    const auto probes = probe_prices(s0);

    auto coarse = strike_grid_with_nodes(s0, half_width, kInitialNodes);
    for (std::size_t n = 2 * kInitialNodes;; n *= 2) {
        auto fine = strike_grid_with_nodes(s0, half_width, n);
        double diff = 0.0;
        for (double s : probes) diff = std::max(diff, std::abs(assemble_il(fine, s) - assemble_il(coarse, s)));
        fine.error_estimate = diff;
        if (diff <= target_tol || n >= kMaxNodes) return fine;
        coarse = std::move(fine);
    }
}

ExpansionPoint il_expansion_terms(double s0) {
    detail::require_positive(s0, "s0");
    const double value = std::sqrt(s0 / s0) - s0 / (2.0 * s0) - 0.5;
    const double slope = 1.0 / (2.0 * std::sqrt(s0 * s0)) - 1.0 / (2.0 * s0);
    return {value, slope};
}

StripValue replicate_il_payoff(const StrikeGrid& grid, double s_terminal) {
    detail::require_positive(s_terminal, "s_terminal");
    detail::require(grid.size() > 0, "replicate_il_payoff: empty grid");
    return {assemble_il(grid, s_terminal),
            grid.error_estimate + payoff_tail(grid.s0, grid.lower_cut, grid.upper_cut, s_terminal)};
}

VanillaQuote vanilla_price(double strike, double s_t, const MarketParams& market, double tau, bool is_call) {
    detail::require_positive(strike, "strike");
    detail::require_positive(s_t, "s_t");
    detail::require_non_negative(tau, "tau");
    detail::require_non_negative(market.sigma, "sigma");

    const double discount = std::exp(-market.r_f() * tau);
    const double fwd = s_t * std::exp(market.r_f() * tau);
    const double intrinsic = discount * std::max(is_call ? fwd - strike : strike - fwd, 0.0);
    const double sd = market.sigma * std::sqrt(tau);

    VanillaQuote q{strike, tau, is_call, intrinsic};
    if (sd == 0.0) return q;
    const double d1 = (std::log(fwd / strike) + 0.5 * sd * sd) / sd;
    const double d2 = d1 - sd;
    const double premium = is_call ? discount * (fwd * norm_cdf(d1) - strike * norm_cdf(d2))
                                   : discount * (strike * norm_cdf(-d2) - fwd * norm_cdf(-d1));
    q.premium = std::max(premium, intrinsic);
    return q;
}

StripValue price_ig_via_strip(const IgContract& contract, double s_t, const MarketParams& market,
                              const StrikeGrid& grid, int workers) {
    return price_strip(contract, s_t, market, grid, [workers](auto& term, std::size_t n) {
        return kernels::term_sum_omp(term, n, workers);
    });
}

StripValue price_ig_via_strip_serial(const IgContract& contract, double s_t, const MarketParams& market,
                                     const StrikeGrid& grid) {
    return price_strip(contract, s_t, market, grid,
                       [](auto& term, std::size_t n) { return kernels::term_sum_serial(term, n); });
}

}  // namespace ammgreeks
