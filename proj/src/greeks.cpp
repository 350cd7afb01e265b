#include "ammgreeks/greeks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ammgreeks/csv.hpp"
#include "ammgreeks/error.hpp"

namespace ammgreeks {

namespace {

double sqrt_leg_rate(const MarketParams& m) {
    return m.r_f() / 2.0 + m.sigma * m.sigma / 8.0;
}

bool close_rel(double a, double b, double tol = 1e-12) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

GreeksReport operator+(const GreeksReport& a, const GreeksReport& b) {
    return {a.delta + b.delta, a.delta_pct + b.delta_pct, a.gamma + b.gamma,
            a.gamma_pct + b.gamma_pct, a.vega + b.vega, a.theta + b.theta, a.rho + b.rho};
}

GreeksReport with_pct_scalings(GreeksReport g, double s_t) {
    const double step = s_t / 100.0;
    g.delta_pct = g.delta * step;
    g.gamma_pct = g.gamma * step * step;
    return g;
}

GreeksReport greeks_unlocked_lp(const LpState& state) {
    if (state.locked) throw DomainError("greeks_unlocked_lp called with a locked state");
    validate(state);
    const double v0 = state.position.notional_v0;
    const double s0 = state.position.entry_price_s0;
    const double s = state.s_t;

    GreeksReport g;
    g.delta = v0 / (2.0 * std::sqrt(s0 * s));
    g.gamma = -v0 / (4.0 * std::sqrt(s0) * std::pow(s, 1.5));
    g.vega = 0.0;
    g.theta = state.market.phi * v0;
    g.rho = 0.0;
    return with_pct_scalings(g, s);
}

GreeksReport greeks_locked_lp(const LpState& state) {
    if (!state.locked) throw DomainError("greeks_locked_lp called with an unlocked state");
    validate(state);
    const auto& m = state.market;
    const double v0 = state.position.notional_v0;
    const double s0 = state.position.entry_price_s0;
    const double s = state.s_t;
    const double tau = state.tau();
    const double big_t = state.maturity_T;
    const auto d = decay_factors(m, tau);
    const double root_ratio = std::sqrt(s / s0);
    const double fee_leg = m.phi * big_t * d.gamma_disc;

    GreeksReport g;
    g.delta = v0 * d.beta / (2.0 * std::sqrt(s0 * s));
    g.gamma = -(v0 * d.beta / (4.0 * std::sqrt(s0) * std::pow(s, 1.5)));
    g.vega = -(v0 * (m.sigma * tau / 4.0) * root_ratio * d.beta);
    g.theta = v0 * (root_ratio * sqrt_leg_rate(m) * d.beta + m.r_f() * fee_leg);
    g.rho = -v0 * ((tau / 2.0) * root_ratio * d.beta + tau * fee_leg);
    return with_pct_scalings(g, s);
}

GreeksReport greeks_ig(const IgContract& contract, double s_t, const MarketParams& market) {
    validate(contract);
    detail::require_positive(s_t, "s_t");
    const double v0 = contract.notional_v0;
    const double k = contract.strike_k;
    const double tau = contract.tau();
    const auto d = decay_factors(market, tau);
    const double root_ratio = std::sqrt(s_t / k);

    GreeksReport g;
    g.delta = v0 * (1.0 / (2.0 * k) - d.beta / (2.0 * std::sqrt(k * s_t)));
    // Same expression as the locked-LP gamma and vega, with K in place of S0,
    // so the hedge cancels bit-for-bit when K == S0.
    g.gamma = v0 * d.beta / (4.0 * std::sqrt(k) * std::pow(s_t, 1.5));
    g.vega = v0 * (market.sigma * tau / 4.0) * root_ratio * d.beta;
    g.theta = v0 * ((market.r_f() / 2.0) * d.gamma_disc - root_ratio * sqrt_leg_rate(market) * d.beta);
    g.rho = (v0 * tau / 2.0) * (root_ratio * d.beta - d.gamma_disc);
    return with_pct_scalings(g, s_t);
}

bool HedgedGreeks::gamma_vega_neutral(double rel_tol) const {
    const double gamma_scale = std::max(std::abs(lp.gamma), std::abs(ig.gamma));
    const double vega_scale = std::max(std::abs(lp.vega), std::abs(ig.vega));
    return std::abs(total.gamma) <= rel_tol * gamma_scale && std::abs(total.vega) <= rel_tol * vega_scale;
}

HedgedGreeks hedge_report(LpState lp, const IgContract& ig, const MarketParams& market, double s_t) {
    if (!lp.locked) throw PreconditionError("hedge: LP position must be locked");
    if (!close_rel(ig.strike_k, lp.position.entry_price_s0))
        throw PreconditionError("hedge: IG strike must equal the LP entry price");
    if (!close_rel(ig.notional_v0, lp.position.notional_v0))
        throw PreconditionError("hedge: IG notional must equal the LP notional");
    if (!close_rel(ig.maturity_T, lp.maturity_T))
        throw PreconditionError("hedge: IG maturity must equal the LP unlock time");
    if (ig.t != lp.t) throw PreconditionError("hedge: IG and LP must be valued at the same time");

    lp.market = market;
    lp.s_t = s_t;

    HedgedGreeks h;
    h.lp = greeks_locked_lp(lp);
    h.ig = greeks_ig(ig, s_t, market);
    h.total = h.lp + h.ig;

    const double v0 = lp.position.notional_v0;
    const double tau = lp.tau();
    const double gamma_disc = std::exp(-market.r_f() * tau);
    const double carry = 0.5 + market.phi * lp.maturity_T;
    h.delta_pred = v0 / (2.0 * ig.strike_k);
    h.theta_pred = v0 * market.r_f() * carry * gamma_disc;
    h.rho_pred = -v0 * tau * carry * gamma_disc;
    return h;
}

double GreeksTable::value(std::size_t row, std::size_t column) const {
    const auto& g = columns.at(column);
    switch (row) {
        case 0: return g.delta;
        case 1: return g.delta_pct;
        case 2: return g.gamma;
        case 3: return g.gamma_pct;
        case 4: return g.vega;
        case 5: return g.theta;
        case 6: return g.rho;
        default: throw std::out_of_range("GreeksTable row");
    }
}

std::string GreeksTable::to_text() const {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "beta = %.10g   gamma = %.10g\n", beta, gamma_disc);
    os << line;
    std::snprintf(line, sizeof line, "%-8s %20s %20s %20s\n", "Greek", kColumnNames[0], kColumnNames[1],
                  kColumnNames[2]);
    os << line;
    for (std::size_t r = 0; r < kRowNames.size(); ++r) {
        std::snprintf(line, sizeof line, "%-8s %20.10g %20.10g %20.10g\n", kRowNames[r], value(r, 0),
                      value(r, 1), value(r, 2));
        os << line;
    }
    return os.str();
}

std::string GreeksTable::to_csv() const {
    std::ostringstream os;
    csv::RowWriter w(os);
    w.header({"greek", "unlocked_lp", "locked_lp", "impermanent_gain"});
    for (std::size_t r = 0; r < kRowNames.size(); ++r)
        w.row(kRowNames[r], value(r, 0), value(r, 1), value(r, 2));
    w.row("beta", beta, beta, beta);
    w.row("gamma_disc", gamma_disc, gamma_disc, gamma_disc);
    return os.str();
}

GreeksTable greeks_table(LpState lp_unlocked, LpState lp_locked, const IgContract& ig,
                         const MarketParams& market, double s_t) {
    lp_unlocked.market = market;
    lp_unlocked.s_t = s_t;
    lp_unlocked.locked = false;
    lp_locked.market = market;
    lp_locked.s_t = s_t;
    lp_locked.locked = true;

    GreeksTable table;
    table.columns[0] = greeks_unlocked_lp(lp_unlocked);
    table.columns[1] = greeks_locked_lp(lp_locked);
    table.columns[2] = greeks_ig(ig, s_t, market);
    const auto d = decay_factors(market, lp_locked.tau());
    table.beta = d.beta;
    table.gamma_disc = d.gamma_disc;
    return table;
}

}  // namespace ammgreeks
