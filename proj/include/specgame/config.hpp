#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "specgame/calibration.hpp"
#include "specgame/engine.hpp"

namespace specgame {

struct EquilibriumConfig {
    int n_probes = 64;
    double probe_radius = 0.05;  // box-normalized
    double tol = 1e-3;
};

struct LambdaCalibrationConfig {
    double c_fair = 1.0;
    double c_priv = 1.0;
    LevelSetBinning binning;
    Strategy targets{0.0, 0.0};
    std::string source;  // frontier CSV; empty = sample the configured oracle
};

struct MetricsConfig {
    std::string predictions_csv;
    int n_classes = 2;
    int n_groups = 2;
    double gamma = 0.1;
};

struct SweepConfig {
    std::vector<double> c_fair_grid;
    std::vector<double> c_priv_grid;
};

/// Fully-resolved experiment configuration: every command echoes one of
/// these (all defaults materialized) next to its outputs, and rerunning from
/// the echo reproduces the outputs byte for byte.
struct ExperimentConfig {
    ExperimentConfig() { game.initial_specs = {{0.1, 5.0}}; }

    std::string preset;  // name this config was derived from, if any
    GameConfig game;
    SweepConfig sweep;
    EquilibriumConfig equilibrium;
    LambdaCalibrationConfig lambda_calibration;
    MetricsConfig metrics;

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string canonical_text() const;  // stable dump for hashing/echo

    /// Parses and validates; unknown keys are rejected by name. Relative
    /// tabular/CSV sources resolve against base_dir.
    static ExperimentConfig from_json(const nlohmann::json& j, const std::string& base_dir = ".");
    static ExperimentConfig load(const std::string& path);

    static ExperimentConfig from_preset(const std::string& name);
    static std::vector<std::string> preset_names();
};

}  // namespace specgame
