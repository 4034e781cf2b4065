// Run configuration for the experiment harness.
//
// Config files are flat `key = value` lines; `#` starts a comment. Keys
// accept either '-' or '_' as separator and match the CLI flag names:
//
//   scenario      switching | diminishing | constant | log_path | power_path | constant_drift
//   horizon       number of rounds (default 100, diminishing 250)
//   tau           switching period
//   cond          condition coefficient of the planar quadratic
//   radius        radius of the feasible ball centered at the origin
//   gamma         positive number or `auto` (largest gradient Lipschitz constant)
//   h             averaging weight in (0, 1]
//   x_init        initial action, e.g. `0,40`, or `optimum`
//   out           output directory
//   emit          comma list of trace, bounds, summary; `none` for nothing
//   a b c         first switching loss        a2 b2 c2   second switching loss
//   a1 b1         diminishing start center    drift_coeff  diminishing drift
//   base_a base_b base_c   preset start center/offset
//   alpha         power_path exponent         drift        constant_drift step

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "ogdtrack/adversaries.hpp"
#include "ogdtrack/core.hpp"

namespace ogdtrack {

enum class Artifact { trace, bounds, summary };

struct ScenarioSpec {
    std::string name = "switching";
    double cond = 100.0;
    double radius = 50.0;
    int tau = 16;
    LossParams first{-100.0, 0.0, 30.0};
    LossParams second{100.0, 20.0, -50.0};
    double a1 = -60.0;
    double b1 = 100.0;
    double drift_coeff = 5.0;
    LossParams base{-30.0, 10.0, 0.0};
    double alpha = 0.5;
    double drift = 1.0;

    int default_horizon() const { return name == "diminishing" ? 250 : 100; }
};

struct RunConfig {
    ScenarioSpec scenario;
    std::optional<int> horizon;       ///< unset: scenario default
    std::optional<Vector> x_init;     ///< unset: [0; 40]
    bool start_at_optimum = false;    ///< overrides x_init with x_1*
    std::optional<double> gamma;      ///< unset: auto
    double h = 1.0;
    std::filesystem::path output_dir = "out";
    std::set<Artifact> emit{Artifact::trace, Artifact::bounds, Artifact::summary};

    int resolved_horizon() const { return horizon.value_or(scenario.default_horizon()); }
};

Scenario build_scenario(const ScenarioSpec& spec, int horizon);

/// Applies one `key = value` setting. Throws std::invalid_argument on an
/// unknown key or malformed value.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Parses a config file body.
std::map<std::string, std::string> parse_key_values(const std::string& text);

RunConfig load_config(const std::filesystem::path& path);

Vector parse_vector(const std::string& text);
std::set<Artifact> parse_emit(const std::string& text);
const char* to_string(Artifact a);

}  // namespace ogdtrack
