#include "ammgreeks/amm_core.hpp"

#include <cmath>

#include "ammgreeks/error.hpp"

namespace ammgreeks {

PoolPosition pool_from_deposit(double v0, double s0) {
    detail::require_positive(v0, "v0");
    detail::require_positive(s0, "s0");
    const double root_s0 = std::sqrt(s0);
    PoolPosition pos{};
    pos.invariant_l = v0 / (2.0 * root_s0);
    pos.entry_price_s0 = s0;
    pos.reserve_x0 = v0 / (2.0 * s0);
    pos.reserve_y0 = v0 / 2.0;
    pos.notional_v0 = v0;
    return pos;
}

Reserves reserves_at_price(const PoolPosition& pos, double s_t) {
    detail::require_positive(s_t, "s_t");
    const double ratio = std::sqrt(s_t / pos.entry_price_s0);
    Reserves r{};
    r.x = pos.reserve_x0 / ratio;
    r.y = pos.reserve_y0 * ratio;
    r.price = s_t;
    return r;
}

double lp_value(const PoolPosition& pos, double s_t, double t, const FeeParams& fees) {
    detail::require_positive(s_t, "s_t");
    detail::require_non_negative(t, "t");
    detail::require_non_negative(fees.phi, "phi");
    return pos.notional_v0 * (std::sqrt(s_t / pos.entry_price_s0) + fees.phi * t);
}

double hodl_value(const PoolPosition& pos, double s_t) {
    detail::require_positive(s_t, "s_t");
    return pos.reserve_x0 * s_t + pos.reserve_y0;
}

}  // namespace ammgreeks
