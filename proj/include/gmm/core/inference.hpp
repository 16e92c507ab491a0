#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gmm/core/dataset.hpp"
#include "gmm/core/gmm.hpp"
#include "gmm/util/rng.hpp"

namespace gmm {

/// Probabilities passed to log() by log_score are floored here.
inline constexpr double kProbabilityFloor = 1e-300;

double joint_probability(const Gmm& model, const StrategyProfile& s);
double log_probability(const Gmm& model, const StrategyProfile& s);
double log_partition(const Gmm& model);

/// Sum over data of log Pr(s^k), each probability floored at 1e-300.
double log_score(const Gmm& model, const PlayDataset& data);

/// I.i.d. draws from the exact joint distribution; deterministic in seed.
PlayDataset sample_profiles(const Gmm& model, std::size_t count, std::uint64_t seed);
PlayDataset sample_profiles(const Gmm& model, std::size_t count, Rng& rng);

/// Exact marginal of one agent's action (index a-1 holds Pr(s_i = a)).
std::vector<double> marginal(const Gmm& model, AgentId agent);

/// Exact joint marginal over an arbitrary scope, indexed by local_index.
std::vector<double> scope_marginal(const Gmm& model, std::span<const AgentId> scope);

/// Statistic over an agent's neighborhood configuration, actions aligned
/// with graph().neighborhood(agent).
using NeighborhoodStatistic = std::function<double(std::span<const Action>)>;

/// E[f(s_{N_i})] under the model, exact.
double expectation_of_statistic(const Gmm& model, const NeighborhoodStatistic& f, AgentId agent);
/// Same, with f given as a table over the neighborhood's local configurations.
double expectation_of_table(const Gmm& model, AgentId agent, std::span<const double> table);

void check_compatible(const Gmm& model, const PlayDataset& data);

}  // namespace gmm
