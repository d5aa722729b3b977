// scenario.hpp: validated scenario configuration shared by the command-line tools
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cct/classical_dynamics.hpp"
#include "cct/env_correlators.hpp"
#include "cct/reduced_density.hpp"

namespace cct {

enum class OutputFormat { Csv, Json };

struct ScenarioConfig {
    SystemParams system{1.0, 1.0};

    // Exactly one of the two environment variants is set.
    std::optional<StochasticParams> stochastic;
    std::optional<std::vector<Oscillator>> bath;
    double bath_gamma0 = 0.0; // gamma_fr(0) for the bath variant

    double hbar = 1.0;
    double t_max = 10.0;
    int n_steps = 100;
    double box_L = 100.0;
    std::optional<GridSpec> grid; // defaults to the box [-L/2, L/2] with 64 points
    OutputFormat format = OutputFormat::Csv;
    std::string output_path;      // empty = standard output

    GridSpec effective_grid() const;
    // Sweep times t_i = t_max * i / n_steps for i = 1..n_steps (empty when t_max = 0).
    std::vector<double> sweep_times() const;
};

// Parses and validates a scenario document. Unknown or ill-typed fields raise
// ConfigError naming the offending field path.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::string& path);

// Re-checks cross-field constraints after flag overrides.
void validate_scenario(const ScenarioConfig& cfg);

// Stochastic parameters of the scenario: taken as given, or reduced from the
// bath. A bath whose correlators do not decay raises ConfigError at
// "environment.bath".
StochasticParams resolve_environment(const ScenarioConfig& cfg);

} // namespace cct
