#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ammgreeks/analytics.hpp"
#include "ammgreeks/mc_oracle.hpp"

namespace ammgreeks {

/// A scenario file: JSON object described by schema/scenario.schema.json.
/// Times are years; any time key may instead be given with a "_days" suffix
/// and is divided by 365.
struct ScenarioConfig {
    Scenario scenario;
    std::optional<McConfig> mc;
    std::optional<double> target_tol;
    /// True when the file quoted r_x and r_y rather than r_f.
    bool rates_as_pair = false;

    double strip_tolerance() const;
};

/// Parses and validates. Throws ConfigError naming the line (syntax) or the
/// dotted field path (schema and domain violations).
ScenarioConfig parse_scenario_config(std::string_view text, std::string_view source = "<config>");

ScenarioConfig load_scenario_config(const std::string& path);

/// Canonical JSON (times in years, 17 significant digits).
std::string to_json(const ScenarioConfig& cfg);

}  // namespace ammgreeks
