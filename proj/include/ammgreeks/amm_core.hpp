#pragma once

// Constant-product pool arithmetic. Every monetary amount is in units of
// token y; prices are token-x prices quoted in token y.

namespace ammgreeks {

/// State of a full-range deposit at entry.
struct PoolPosition {
    double invariant_l;     // L = sqrt(x * y)
    double entry_price_s0;  // S0
    double reserve_x0;
    double reserve_y0;
    double notional_v0;     // V0 = x0 * S0 + y0 = 2 L sqrt(S0)
};

struct Reserves {
    double x;
    double y;
    double price;  // y / x
};

struct FeeParams {
    double phi = 0.0;  // expected fee APY, decimal per year
};

/// Splits v0 equally by value into both tokens at price s0.
PoolPosition pool_from_deposit(double v0, double s0);

/// Reserves held by the position once the pool price has moved to s_t,
/// assuming no liquidity is added or removed in between.
Reserves reserves_at_price(const PoolPosition& pos, double s_t);

/// V0 * (sqrt(s_t / s0) + phi * t): pool share plus linearly accrued fees.
double lp_value(const PoolPosition& pos, double s_t, double t, const FeeParams& fees);

/// Value of holding the initial reserves untouched: x0 * s_t + y0.
double hodl_value(const PoolPosition& pos, double s_t);

}  // namespace ammgreeks
