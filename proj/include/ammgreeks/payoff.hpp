#pragma once

#include <utility>
#include <vector>

namespace ammgreeks {

/// Return of token x in token y relative to a reference price, r >= -1.
struct ReturnInput {
    double r;
    double alpha;  // r + 1

    static ReturnInput from_return(double r);
    static ReturnInput from_prices(double s_t, double reference);
};

/// LP value minus HODL value over V0, as a function of the price return:
/// sqrt(r + 1) - r / 2 - 1. Never positive.
double impermanent_loss(double r);

/// Exact negation of impermanent_loss: 1 + r / 2 - sqrt(r + 1) >= 0.
double impermanent_gain(double r);

/// s_t / k - 1
double ig_return_from_strike(double s_t, double k);

/// n_points evenly spaced returns over [r_min, r_max], endpoints included,
/// paired with impermanent_loss at each.
std::vector<std::pair<double, double>> il_curve(double r_min, double r_max, int n_points);

}  // namespace ammgreeks
