#pragma once

#include <string>
#include <vector>

#include "ambinv/simulate.hpp"
#include "ambinv/solver.hpp"

namespace ambinv {

enum class ExperimentKind { solve, barriers, simulate, sweep };

struct ExperimentConfig {
    ModelParams params;
    GridSpec grid;
    SimConfig sim;
    SolveOptions solver;
    ExperimentKind kind = ExperimentKind::solve;
    std::string sweep_name;
    std::string out_dir = "out";
    double fig_tau = 20.0;   // slice shown in barrier figures
    int n_record_paths = 1;  // full path series kept in paths.csv

    // Full resolved configuration as a "# key = value" block; every emitted
    // file starts with it so artifacts are self-describing and re-runnable.
    std::string metadata() const;
};

// Parses the flat key = value format ('#' starts a comment). Unknown keys,
// unparsable values and violated invariants raise ConfigError naming the key
// and line. Missing keys keep their defaults (the base parameter set).
ExperimentConfig parse_config(const std::string& text);

// One comparative-statics preset: vary `key` over `values` around the base
// parameter set.
struct SweepPreset {
    std::string name;
    std::string key; // empty: vary the extraction time instead of a parameter
    std::vector<double> values;
};

const std::vector<SweepPreset>& sweep_presets();
const SweepPreset* find_preset(const std::string& name);

// Sets a model parameter by config key name; throws ConfigError for keys that
// are not sweepable model parameters.
void set_model_param(ModelParams& params, const std::string& key, double value);

const char* to_string(ExperimentKind kind);

} // namespace ambinv
