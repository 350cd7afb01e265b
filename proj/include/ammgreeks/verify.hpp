#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ammgreeks/mc_oracle.hpp"
#include "ammgreeks/scenario_config.hpp"

namespace ammgreeks {

/// One row of a verification report. For Monte Carlo rows `std_error` is
/// the estimator's standard error and `z_score` the usual z. Deterministic
/// rows (finite differences, replication) put the allowed absolute error in
/// `std_error`, so |z_score| <= 1 is a pass for them.
struct CheckResult {
    std::string name;
    double closed_form = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;
    bool pass = false;
    bool skipped = false;
};

inline constexpr double kZThreshold = 3.0;

/// Parameters of a terminal-moment check.
struct MomentCase {
    double s_t;
    MarketParams market;
    double tau;
};

/// Five fixed cases spanning sigma in [0, 1.5], r_f in [-0.05, 0.10] and
/// tau in [0, 2].
std::vector<MomentCase> standard_moment_cases();

using SqrtMomentFormula = std::function<double(double s_t, const MarketParams&, double tau)>;

/// Compares `formula` against the MC mean of sqrt(S_T). The formula is
/// injectable so a deliberately wrong one can serve as a negative control.
CheckResult sqrt_moment_check(const std::string& name, const MomentCase& c, const McConfig& cfg,
                              const SqrtMomentFormula& formula = expected_sqrt_price);

CheckResult forward_moment_check(const std::string& name, const MomentCase& c, const McConfig& cfg);

/// MC discounted payoff against the closed-form price.
CheckResult price_check(const std::string& name, PayoffKind kind, const Scenario& s, const McConfig& cfg);

/// Central difference against the closed-form greek; relative tolerance
/// 1e-6 (1e-5 for gamma). Rows whose bump would leave the domain are
/// marked skipped.
CheckResult greek_check(PricerId pricer, GreekId greek, const Scenario& s);

/// Closed-form greek selected by (pricer, greek).
double closed_form_greek(PricerId pricer, GreekId greek, const Scenario& s);

/// The whole suite for one scenario: moments, MC prices, finite-difference
/// greeks and the strip replication. MC checks use consecutive seeds
/// starting at cfg.seed.
std::vector<CheckResult> run_verification(const ScenarioConfig& config, const McConfig& cfg);

bool all_passed(const std::vector<CheckResult>& results);

/// check,closed_form,mc_mean,std_error,z_score,pass
void write_report_csv(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace ammgreeks
