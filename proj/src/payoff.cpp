#include "ammgreeks/payoff.hpp"

#include <cmath>
#include <string>

#include "ammgreeks/error.hpp"

namespace ammgreeks {

namespace {

void check_return(double r) {
    if (!(r >= -1.0) || !std::isfinite(r))
        throw DomainError("return must be >= -1 and finite, got " + std::to_string(r));
}

}  // namespace

ReturnInput ReturnInput::from_return(double r) {
    check_return(r);
    return {r, r + 1.0};
}

ReturnInput ReturnInput::from_prices(double s_t, double reference) {
    return from_return(ig_return_from_strike(s_t, reference));
}

double impermanent_loss(double r) {
    check_return(r);
    return std::sqrt(r + 1.0) - r / 2.0 - 1.0;
}

double impermanent_gain(double r) {
    return -impermanent_loss(r);
}

double ig_return_from_strike(double s_t, double k) {
    detail::require_positive(s_t, "s_t");
    detail::require_positive(k, "k");
    return s_t / k - 1.0;
}

std::vector<std::pair<double, double>> il_curve(double r_min, double r_max, int n_points) {
    check_return(r_min);
    check_return(r_max);
    if (!(r_min < r_max)) throw DomainError("il_curve: r_min must be below r_max");
    if (n_points < 2) throw DomainError("il_curve: need at least 2 points");

    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(n_points));
    const double span = r_max - r_min;
    for (int i = 0; i < n_points; ++i) {
        // Pin the last node so the upper endpoint is exact.
        const double r = (i == n_points - 1) ? r_max : r_min + span * i / (n_points - 1);
        out.emplace_back(r, impermanent_loss(r));
    }
    return out;
}

}  // namespace ammgreeks
