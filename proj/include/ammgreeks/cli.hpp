#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ammgreeks/scenario_config.hpp"

namespace ammgreeks::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,  // bad arguments or scenario file
    kDomainError = 3,
};

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Identifiers accepted by `figure --figure`.
std::vector<std::string> figure_ids();

/// Writes the curve behind a figure as CSV: abscissa (r or s_t) and the raw
/// closed-form value. Throws std::out_of_range for an unknown id.
void write_figure(const std::string& id, const ScenarioConfig& cfg, std::ostream& os);

}  // namespace ammgreeks::cli
