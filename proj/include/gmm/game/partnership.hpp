#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmm/core/gmm.hpp"
#include "gmm/core/graph.hpp"
#include "gmm/core/profile.hpp"

namespace gmm::game {

enum class Sector { commerce, infrastructure, content };

std::string to_string(Sector s);
Sector parse_sector(std::string_view name);

struct CompanyParams {
  AgentId id = 0;
  double size = 1.0;          // z, in (0, 1000)
  Sector sector = Sector::commerce;
  double change_coeff = 0.5;  // ch, in [0, 1]

  friend bool operator==(const CompanyParams&, const CompanyParams&) = default;
};

/// Internet-industry partnership game with its random coefficients frozen:
/// y_ij per edge and y_i per agent, each U[0, 1], drawn once from `seed`
/// (edges in sorted order, then agents in index order). Payoffs are a
/// deterministic function of the instance afterwards.
class GameInstance {
 public:
  static GameInstance build(InteractionGraph graph, std::vector<CompanyParams> companies,
                            std::uint64_t seed);
  /// Uses the given coefficients verbatim instead of drawing them.
  static GameInstance with_coefficients(InteractionGraph graph,
                                        std::vector<CompanyParams> companies,
                                        std::map<Edge, double> pair_coeffs,
                                        std::vector<double> flex_coeffs, std::uint64_t seed);

  const InteractionGraph& graph() const noexcept { return graph_; }
  std::size_t agents() const noexcept { return graph_.size(); }
  const std::vector<CompanyParams>& companies() const noexcept { return companies_; }
  const CompanyParams& company(AgentId i) const { return companies_.at(i); }
  const std::map<Edge, double>& pair_coeffs() const noexcept { return pair_coeffs_; }
  const std::vector<double>& flex_coeffs() const noexcept { return flex_coeffs_; }
  double pair_coeff(AgentId i, AgentId j) const;
  double flex_coeff(AgentId i) const { return flex_coeffs_.at(i); }
  std::uint64_t seed() const noexcept { return seed_; }
  ProfileSpace space() const { return ProfileSpace::binary(agents()); }

  /// Sub-game on `agents` (relabelled in the given order), keeping the
  /// already-drawn coefficients of the retained edges and agents.
  GameInstance induced(std::span<const AgentId> agents) const;
  /// Indices of the k largest companies by size (ties by lower id), sorted.
  std::vector<AgentId> largest(std::size_t k) const;

 private:
  InteractionGraph graph_;
  std::vector<CompanyParams> companies_;
  std::map<Edge, double> pair_coeffs_;
  std::vector<double> flex_coeffs_;
  std::uint64_t seed_ = 0;
};

/// Partnership strength w_ij(s_i, s_j) for an edge (i, j).
double pair_weight(const GameInstance& inst, AgentId i, AgentId j, Action si, Action sj);

/// phi(ch, s): piecewise comparison of the action with the change coefficient.
double flexibility(double ch, Action s);

/// u_i over the neighborhood configuration (actions aligned with N_i).
double payoff(const GameInstance& inst, AgentId i, std::span<const Action> hood_config);
double payoff(const GameInstance& inst, AgentId i, const StrategyProfile& s);

/// eps_i: best unilateral gain over the agent's own actions, >= 0.
double regret(const GameInstance& inst, AgentId i, std::span<const Action> hood_config);
double regret(const GameInstance& inst, AgentId i, const StrategyProfile& s);

/// eps_i for every configuration of N_i, in ProfileSpace::local_index order.
RegretTable regret_table(const GameInstance& inst, AgentId i);
std::vector<RegretTable> regret_tables(const GameInstance& inst);

}  // namespace gmm::game
