#include "gmm/heuristic/heuristic.hpp"

#include <cmath>

#include "gmm/util/error.hpp"

namespace gmm::heuristic {

HeuristicSpec HeuristicSpec::constant(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("constant heuristic rate must lie in (0, 1)");
  return {Mode::constant, p};
}

double p_change(const game::GameInstance& inst, AgentId i, const HeuristicSpec& spec) {
  require(i < inst.agents(), "agent out of range");
  if (spec.mode == HeuristicSpec::Mode::constant) {
    if (!(spec.p > 0.0 && spec.p < 1.0)) throw ValidationError("constant heuristic rate must lie in (0, 1)");
    return spec.p;
  }
  const double z = inst.company(i).size;
  if (!(z < 1000.0)) throw ValidationError("size >= 1000 makes pChange non-positive");
  const auto hood = static_cast<double>(inst.graph().neighborhood(i).size());
  return 0.5 * std::pow(1.0 - 1e-3, hood) * (1.0 - 1e-3 * z);
}

Gmm build_heuristic_gmm(const game::GameInstance& inst, const HeuristicSpec& spec) {
  std::vector<LocalPotential> pots;
  for (AgentId i = 0; i < inst.agents(); ++i) {
    const double p = p_change(inst, i, spec);
    pots.push_back({i, {i}, {1.0 - p, p}});
  }
  return Gmm::from_potentials(inst.graph(), inst.space(), std::move(pots));
}

PlayDataset sample_heuristic(const game::GameInstance& inst, const HeuristicSpec& spec,
                             std::size_t count, std::uint64_t seed) {
  require(count >= 1, "sample count must be positive");
  std::vector<double> p(inst.agents());
  for (AgentId i = 0; i < p.size(); ++i) p[i] = p_change(inst, i, spec);
  Rng rng(seed);
  PlayDataset out(inst.agents());
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Action> a(p.size());
    for (AgentId i = 0; i < p.size(); ++i) a[i] = uniform01(rng) < p[i] ? kUpgrade : kRetain;
    out.push_back(StrategyProfile(std::move(a)));
  }
  return out;
}

}  // namespace gmm::heuristic
