#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "gmm/core/dataset.hpp"
#include "gmm/game/partnership.hpp"
#include "gmm/heuristic/heuristic.hpp"
#include "gmm/util/rng.hpp"

namespace gmm::rl {

/// sigma_i(s_i | s_{N_-i}): one row over the agent's own actions per partner
/// configuration. States are indexed like ProfileSpace::local_index over the
/// sorted partner list.
struct AgentPolicy {
  std::vector<AgentId> partners;
  int actions = 2;
  std::vector<double> rows;  // states x actions, row-major

  std::size_t states() const noexcept { return rows.size() / static_cast<std::size_t>(actions); }
  std::span<const double> row(std::size_t state) const {
    return {rows.data() + state * static_cast<std::size_t>(actions), static_cast<std::size_t>(actions)};
  }
  std::span<double> row(std::size_t state) {
    return {rows.data() + state * static_cast<std::size_t>(actions), static_cast<std::size_t>(actions)};
  }
  friend bool operator==(const AgentPolicy&, const AgentPolicy&) = default;
};

class Policy {
 public:
  Policy() = default;
  explicit Policy(std::vector<AgentPolicy> agents) : agents_(std::move(agents)) {}

  /// Every row of agent i set to (1 - pChange(i), pChange(i)).
  static Policy heuristic(const game::GameInstance& inst, const heuristic::HeuristicSpec& spec);

  std::size_t agents() const noexcept { return agents_.size(); }
  const AgentPolicy& agent(AgentId i) const { return agents_.at(i); }
  AgentPolicy& agent(AgentId i) { return agents_.at(i); }

  /// Throws ValidationError unless every row is a distribution (1e-9).
  void validate(double tol = 1e-9) const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::vector<AgentPolicy> agents_;
};

struct QCell {
  double mean = 0.0;
  std::uint64_t count = 0;
  friend bool operator==(const QCell&, const QCell&) = default;
};

/// Q_i(s_i, s_{N_-i}) as running averages of credited rewards.
class QTable {
 public:
  QTable() = default;
  explicit QTable(const Policy& shape);

  QCell& cell(AgentId i, std::size_t state, int action);
  const QCell& cell(AgentId i, std::size_t state, int action) const;
  std::size_t agents() const noexcept { return cells_.size(); }
  void credit(AgentId i, std::size_t state, int action, double reward);

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::vector<std::vector<QCell>> cells_;
  std::vector<int> actions_;
};

struct RlConfig {
  double gamma = 0.2;
  std::size_t iterations = 40;
  std::size_t plays_per_iteration = 50;
  std::uint64_t seed = 0;

  void validate() const;
  friend bool operator==(const RlConfig&, const RlConfig&) = default;
};

/// Reward credited to Q during a play: (agent, state, 0-based action, reward).
using CreditObserver = std::function<void(AgentId, std::size_t, int, double)>;

struct IterationStats {
  double mean_payoff = 0.0;          // averaged over plays and agents
  std::size_t rows_changed = 0;
};

/// Pr_i(s_i = a): rows averaged under a uniform distribution over partner
/// configurations (agents act without observing their partners).
std::vector<double> marginal_action_prob(const Policy& policy, AgentId i);

/// One round: `plays_per_iteration` joint plays from the marginals, rewards
/// u_i credited to Q, then for every state visited this round the row moves
/// toward the greedy row: sigma <- (1 - gamma) sigma + gamma sigma*. Rows of
/// unvisited states are left alone.
IterationStats rl_iteration(const game::GameInstance& inst, Policy& policy, QTable& q,
                            const RlConfig& cfg, Rng& rng, const CreditObserver& observer = {});

struct RlResult {
  Policy policy;
  QTable q;
  std::vector<IterationStats> history;
};

/// Heuristic start followed by exactly cfg.iterations rounds.
RlResult run_rl(const game::GameInstance& inst, const heuristic::HeuristicSpec& spec,
                const RlConfig& cfg, const CreditObserver& observer = {});

/// Joint plays with every agent drawing independently from its marginal.
PlayDataset sample_sim_data(const game::GameInstance& inst, const Policy& policy,
                            std::size_t count, std::uint64_t seed);

nlohmann::json policy_to_json(const Policy& policy);
Policy policy_from_json(const nlohmann::json& j);

}  // namespace gmm::rl
