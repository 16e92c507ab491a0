#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmm/combine/methods.hpp"
#include "gmm/experiment/config.hpp"
#include "gmm/game/fixture.hpp"
#include "gmm/rl/simulation.hpp"

namespace gmm::experiment {

/// One (trial, setting, method, baseline) comparison on a test set.
struct ScoreRow {
  std::string setting;
  std::string method;
  std::string baseline;
  double score_base = 0.0;
  double score_combined = 0.0;
  double ratio = 0.0;  // score_base / score_combined

  friend bool operator==(const ScoreRow&, const ScoreRow&) = default;
};

struct TrialResult {
  std::size_t trial = 0;
  std::vector<std::pair<std::string, std::uint64_t>> seeds;
  /// Score(model | test set) keyed "setting:model".
  std::vector<std::pair<std::string, double>> scores;
  std::vector<ScoreRow> rows;
  std::vector<std::string> failures;  // sweep points that could not run
  double wall_seconds = 0.0;

  double score(std::string_view key) const;
};

/// Game, input models and datasets of one trial, before any combination.
struct TrialInputs {
  game::GameInstance game;
  Gmm family;  // regret tables at unit lambda
  Gmm reg;     // reG with sampled temperatures
  Gmm hg;      // hG of the heuristic that produced `train`
  PlayDataset train;
  rl::RlResult sim;
  PlayDataset test;
};

/// Builds the trial's game, reG, hG, training plays from the heuristic, the
/// RL simulation and test plays from it. `stream` prefixes the seed tags of
/// the data-generating stages so a second pipeline draws independent data.
TrialInputs prepare_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture,
                          std::size_t trial, const heuristic::HeuristicSpec& spec,
                          std::string_view stream = {}, TrialResult* log = nullptr);

struct CombinedModels {
  combine::FitResult direct;
  combine::OpinionPoolResult pool;
  combine::MixResult mix;
};

CombinedModels combine_sources(const Gmm& g1, const Gmm& family, const PlayDataset& data,
                               const ExperimentConfig& cfg, std::uint64_t mix_seed);

/// Regret-form fit to a fresh sample of the simulation (simG).
combine::FitResult fit_simg(const ExperimentConfig& cfg, const TrialInputs& in, std::size_t trial,
                            TrialResult* log = nullptr);

TrialResult run_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture, std::size_t trial);
TrialResult run_simg_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture, std::size_t trial);
TrialResult run_rho_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture, std::size_t trial);
TrialResult run_delta_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture, std::size_t trial);
TrialResult run_cross_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture, std::size_t trial);

/// Setting labels used in result rows.
std::string rho_setting(double rho);
std::string delta_setting(double delta);

}  // namespace gmm::experiment
