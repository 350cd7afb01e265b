#pragma once

#include <array>
#include <string>

#include "ammgreeks/analytics.hpp"

namespace ammgreeks {

/// Sensitivities of one strategy, in raw units. Theta is dP/dt at fixed
/// maturity; rho is dP/dr_f.
struct GreeksReport {
    double delta = 0.0;
    double delta_pct = 0.0;  // delta * s_t / 100
    double gamma = 0.0;
    double gamma_pct = 0.0;  // gamma * (s_t / 100)^2
    double vega = 0.0;
    double theta = 0.0;
    double rho = 0.0;

    // Presentation scalings.
    double vega_pct() const { return vega / 100.0; }
    double theta_daily() const { return theta / 365.0; }
    double rho_pct() const { return rho / 100.0; }
};

GreeksReport operator+(const GreeksReport& a, const GreeksReport& b);

/// Fills delta_pct and gamma_pct from delta, gamma and the spot.
GreeksReport with_pct_scalings(GreeksReport g, double s_t);

GreeksReport greeks_unlocked_lp(const LpState& state);
GreeksReport greeks_locked_lp(const LpState& state);
GreeksReport greeks_ig(const IgContract& contract, double s_t, const MarketParams& market);

/// Locked LP hedged with an IG struck at the entry price.
struct HedgedGreeks {
    GreeksReport lp;
    GreeksReport ig;
    GreeksReport total;
    double delta_pred = 0.0;  // V0 / (2K)
    double theta_pred = 0.0;  // V0 r_f (1/2 + phi T) gamma_disc
    double rho_pred = 0.0;    // -V0 tau (1/2 + phi T) gamma_disc

    /// True when |gamma| and |vega| of the total are within rel_tol of the
    /// component magnitudes.
    bool gamma_vega_neutral(double rel_tol = 1e-10) const;
};

/// Throws PreconditionError unless the IG strike equals the entry price and
/// notional, maturity and valuation time match.
HedgedGreeks hedge_report(LpState lp, const IgContract& ig, const MarketParams& market, double s_t);

/// Side-by-side greeks of the three strategies at a common spot.
struct GreeksTable {
    static constexpr std::array<const char*, 7> kRowNames{"Delta", "Delta1%", "Gamma", "Gamma1%",
                                                          "Vega",  "Theta",   "Rho"};
    static constexpr std::array<const char*, 3> kColumnNames{"Unlocked LP", "Locked LP",
                                                             "Impermanent Gain"};
    std::array<GreeksReport, 3> columns;
    double beta = 1.0;
    double gamma_disc = 1.0;

    double value(std::size_t row, std::size_t column) const;
    std::string to_text() const;
    std::string to_csv() const;
};

GreeksTable greeks_table(LpState lp_unlocked, LpState lp_locked, const IgContract& ig,
                         const MarketParams& market, double s_t);

}  // namespace ammgreeks
