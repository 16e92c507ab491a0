#pragma once

#include <cstdint>

#include "gmm/core/dataset.hpp"
#include "gmm/core/gmm.hpp"
#include "gmm/game/partnership.hpp"
#include "gmm/util/rng.hpp"

namespace gmm::heuristic {

/// Rule deciding how likely each company is to upgrade: either the
/// size/degree rule or a constant rate p in (0, 1).
struct HeuristicSpec {
  enum class Mode { pchange, constant };
  Mode mode = Mode::pchange;
  double p = 0.0;

  static HeuristicSpec pchange() { return {}; }
  static HeuristicSpec constant(double p);

  friend bool operator==(const HeuristicSpec&, const HeuristicSpec&) = default;
};

/// Size/degree rule: 0.5 * (1 - 1e-3)^{|N_i|} * (1 - 1e-3 * z_i), where
/// |N_i| counts the agent itself. Constant mode returns p.
double p_change(const game::GameInstance& inst, AgentId i, const HeuristicSpec& spec);

/// hG: pi_i depends on s_i only, pi_i(2) = pChange(i), pi_i(1) = 1 - pChange(i),
/// so Z = 1 and agents are independent.
Gmm build_heuristic_gmm(const game::GameInstance& inst, const HeuristicSpec& spec);

/// hM: every agent independently upgrades with probability pChange(i).
PlayDataset sample_heuristic(const game::GameInstance& inst, const HeuristicSpec& spec,
                             std::size_t count, std::uint64_t seed);

}  // namespace gmm::heuristic
