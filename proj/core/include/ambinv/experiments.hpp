#pragma once

#include "ambinv/config.hpp"

namespace ambinv {

// Runs one experiment end-to-end, writing every artifact under cfg.out_dir.
// Rerunning with the same configuration overwrites byte-identical files.
// Throws ConfigError (CLI exit 1) or NumericalError (CLI exit 2).
void run_experiment(const ExperimentConfig& cfg);

} // namespace ambinv
