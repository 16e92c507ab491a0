#pragma once

#include <vector>

#include "gmm/experiment/config.hpp"
#include "gmm/experiment/trial.hpp"

namespace gmm::experiment {

struct SuiteResult {
  ExperimentConfig config;
  std::vector<TrialResult> trials;  // ordered by trial index
};

/// Runs cfg.trials trials of cfg.suite. Trials may execute concurrently;
/// each owns its state and results are stored by index, so the output does
/// not depend on scheduling.
SuiteResult run_suite(const ExperimentConfig& cfg);

SuiteResult run_baseline(ExperimentConfig cfg);
SuiteResult run_simg_comparison(ExperimentConfig cfg);
SuiteResult sweep_availability(ExperimentConfig cfg, std::vector<double> rho);
SuiteResult sweep_inaccuracy(ExperimentConfig cfg, std::vector<double> delta);
SuiteResult cross_input_experiment(ExperimentConfig cfg);

}  // namespace gmm::experiment
