#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmm/combine/fit.hpp"
#include "gmm/heuristic/heuristic.hpp"
#include "gmm/rl/simulation.hpp"

namespace gmm::experiment {

enum class Suite { baseline, simg, rho, delta, cross };

std::string to_string(Suite s);
Suite parse_suite(const std::string& name);

/// Where the per-trial game coefficients come from: the fixture's own
/// coeff_seed / explicit values, or a fresh draw per trial.
enum class CoefficientSource { fixture, per_trial };

struct ExperimentConfig {
  std::filesystem::path fixture;
  std::size_t trials = 20;
  std::size_t train_size = 500;
  std::size_t test_size = 500;
  std::uint64_t master_seed = 0;
  Suite suite = Suite::baseline;
  CoefficientSource coefficients = CoefficientSource::fixture;

  heuristic::HeuristicSpec heuristic = heuristic::HeuristicSpec::pchange();
  heuristic::HeuristicSpec cross_heuristic = heuristic::HeuristicSpec::constant(0.05);
  double temperature_min = 0.5;
  double temperature_max = 2.0;

  combine::FitConfig fit;
  double pool_learning_rate = 0.05;
  rl::RlConfig rl;  // seed is derived per trial

  std::vector<double> rho = {0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
  std::vector<double> delta = {0.0, 0.25, 0.5, 0.75, 1.0};

  /// Worker threads for trial-level parallelism; 0 keeps the OpenMP default.
  std::size_t threads = 0;

  void validate() const;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Relative fixture paths resolve against `base_dir`. Unknown keys are
/// rejected; errors carry the offending field path.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json heuristic_to_json(const heuristic::HeuristicSpec& spec);
heuristic::HeuristicSpec heuristic_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace gmm::experiment
