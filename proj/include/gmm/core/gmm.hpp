#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gmm/core/graph.hpp"
#include "gmm/core/profile.hpp"

namespace gmm {

/// Values over the local configurations of `scope`, indexed with
/// ProfileSpace::local_index. Used both for potentials and regret tables.
struct NeighborhoodTable {
  AgentId owner = 0;
  std::vector<AgentId> scope;
  std::vector<double> values;
};

using LocalPotential = NeighborhoodTable;
using RegretTable = NeighborhoodTable;

/// Largest agent count (and profile count, 2^20) handled by exact inference.
inline constexpr std::size_t kMaxExactAgents = 20;
inline constexpr std::uint64_t kMaxExactProfiles = std::uint64_t{1} << 20;

/// Unnormalized log weights of every joint profile plus the normalizer.
struct OutcomeTable {
  std::vector<double> log_weight;
  std::vector<double> prob;
  double log_z = 0.0;
};

namespace detail {
struct OutcomeCache;
}

enum class ModelForm { table, regret };

/// Graphical multiagent model: Pr(s) = prod_i pi_i(s_{N_i}) / Z.
///
/// Table form stores strictly positive potentials. Regret form stores the
/// per-neighborhood regret tables and lambda, with pi_i = exp(-lambda_i *
/// eps_i); log potentials are evaluated directly so large regrets never
/// underflow. Instances are immutable; the outcome table is filled once on
/// first use and shared between copies. with_lambda() yields a new model with
/// its own cache.
class Gmm {
 public:
  Gmm() = default;

  static Gmm from_potentials(InteractionGraph graph, ProfileSpace space,
                             std::vector<LocalPotential> potentials);
  static Gmm from_regrets(InteractionGraph graph, ProfileSpace space,
                          std::vector<RegretTable> regrets, std::vector<double> lambda);

  ModelForm form() const noexcept { return form_; }
  bool is_regret_form() const noexcept { return form_ == ModelForm::regret; }

  const InteractionGraph& graph() const noexcept { return graph_; }
  const ProfileSpace& space() const noexcept { return space_; }
  std::size_t agents() const noexcept { return space_.agents(); }

  /// Linear potentials (exp of the log tables for regret form).
  const std::vector<LocalPotential>& potentials() const noexcept { return potentials_; }
  const std::vector<NeighborhoodTable>& log_potentials() const noexcept { return log_potentials_; }

  /// Regret form only.
  std::span<const double> lambda() const;
  const std::vector<RegretTable>& regrets() const;
  Gmm with_lambda(std::vector<double> lambda) const;

  /// Sum of log potentials of one profile.
  double log_weight(const StrategyProfile& s) const;

  /// Joint table over all profiles; throws ModelTooLargeError past the cap.
  const OutcomeTable& outcomes() const;
  bool within_exact_cap() const noexcept;

 private:
  void build_log_tables();

  ModelForm form_ = ModelForm::table;
  InteractionGraph graph_;
  ProfileSpace space_;
  std::vector<LocalPotential> potentials_;
  std::vector<NeighborhoodTable> log_potentials_;
  std::vector<RegretTable> regrets_;
  std::vector<double> lambda_;
  std::shared_ptr<detail::OutcomeCache> cache_;
};

std::string to_string(ModelForm form);

}  // namespace gmm
