#include "gmm/game/partnership.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gmm/util/error.hpp"
#include "gmm/util/rng.hpp"

namespace gmm::game {

std::string to_string(Sector s) {
  switch (s) {
    case Sector::commerce: return "commerce";
    case Sector::infrastructure: return "infrastructure";
    case Sector::content: return "content";
  }
  return "?";
}

Sector parse_sector(std::string_view name) {
  if (name == "commerce") return Sector::commerce;
  if (name == "infrastructure") return Sector::infrastructure;
  if (name == "content") return Sector::content;
  throw ValidationError("unknown sector '" + std::string(name) + "'");
}

namespace {

void validate(const InteractionGraph& graph, const std::vector<CompanyParams>& companies) {
  std::vector<std::string> problems;
  if (companies.size() != graph.size()) {
    problems.push_back("companies: expected " + std::to_string(graph.size()) + ", got " +
                       std::to_string(companies.size()));
  }
  for (std::size_t k = 0; k < companies.size(); ++k) {
    const auto& c = companies[k];
    const std::string at = "companies[" + std::to_string(k) + "].";
    if (c.id != k) problems.push_back(at + "id must equal its position " + std::to_string(k));
    if (!(c.size > 0.0 && c.size < 1000.0)) problems.push_back(at + "size must lie in (0, 1000)");
    if (!(c.change_coeff >= 0.0 && c.change_coeff <= 1.0)) {
      problems.push_back(at + "change_coeff must lie in [0, 1]");
    }
  }
  if (!problems.empty()) {
    std::string msg = "invalid company parameters:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ValidationError(msg);
  }
}

Edge key(AgentId i, AgentId j) { return i < j ? Edge{i, j} : Edge{j, i}; }

}  // namespace

GameInstance GameInstance::build(InteractionGraph graph, std::vector<CompanyParams> companies,
                                 std::uint64_t seed) {
  validate(graph, companies);
  Rng rng(seed);
  std::map<Edge, double> pair;
  for (const auto& e : graph.edges()) pair[e] = uniform01(rng);
  std::vector<double> flex(graph.size());
  for (auto& y : flex) y = uniform01(rng);
  return with_coefficients(std::move(graph), std::move(companies), std::move(pair),
                           std::move(flex), seed);
}

GameInstance GameInstance::with_coefficients(InteractionGraph graph,
                                             std::vector<CompanyParams> companies,
                                             std::map<Edge, double> pair_coeffs,
                                             std::vector<double> flex_coeffs,
                                             std::uint64_t seed) {
  validate(graph, companies);
  std::map<Edge, double> pair;
  for (const auto& [e, y] : pair_coeffs) pair[key(e.first, e.second)] = y;
  if (pair.size() != graph.edges().size()) {
    throw ValidationError("pair_coeffs must list every edge exactly once");
  }
  for (const auto& [e, y] : pair) {
    if (!graph.has_edge(e.first, e.second)) {
      throw ValidationError("pair_coeffs has (" + std::to_string(e.first) + ", " +
                            std::to_string(e.second) + ") which is not an edge");
    }
    if (!(y >= 0.0 && y <= 1.0)) throw ValidationError("pair_coeffs values must lie in [0, 1]");
  }
  if (flex_coeffs.size() != graph.size()) throw ValidationError("need one flex_coeff per agent");
  for (double y : flex_coeffs) {
    if (!(y >= 0.0 && y <= 1.0)) throw ValidationError("flex_coeffs values must lie in [0, 1]");
  }
  GameInstance g;
  g.graph_ = std::move(graph);
  g.companies_ = std::move(companies);
  g.pair_coeffs_ = std::move(pair);
  g.flex_coeffs_ = std::move(flex_coeffs);
  g.seed_ = seed;
  return g;
}

double GameInstance::pair_coeff(AgentId i, AgentId j) const {
  auto it = pair_coeffs_.find(key(i, j));
  if (it == pair_coeffs_.end()) {
    throw PreconditionError("(" + std::to_string(i) + ", " + std::to_string(j) + ") is not an edge");
  }
  return it->second;
}

GameInstance GameInstance::induced(std::span<const AgentId> agents) const {
  auto sub = graph_.induced(agents);
  std::vector<CompanyParams> comp;
  std::vector<double> flex;
  for (std::size_t k = 0; k < agents.size(); ++k) {
    auto c = companies_.at(agents[k]);
    c.id = k;
    comp.push_back(c);
    flex.push_back(flex_coeffs_.at(agents[k]));
  }
  std::map<Edge, double> pair;
  for (const auto& [a, b] : sub.edges()) pair[{a, b}] = pair_coeff(agents[a], agents[b]);
  return with_coefficients(std::move(sub), std::move(comp), std::move(pair), std::move(flex), seed_);
}

std::vector<AgentId> GameInstance::largest(std::size_t k) const {
  require(k <= agents(), "cannot take more companies than exist");
  std::vector<AgentId> order(agents());
  std::iota(order.begin(), order.end(), AgentId{0});
  std::stable_sort(order.begin(), order.end(), [&](AgentId a, AgentId b) {
    return companies_[a].size > companies_[b].size;
  });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

double pair_weight(const GameInstance& inst, AgentId i, AgentId j, Action si, Action sj) {
  const double y = inst.pair_coeff(i, j);
  const auto& ci = inst.company(i);
  const auto& cj = inst.company(j);
  const double zsum = ci.size + cj.size;
  if (si != sj) return zsum;
  // 2^{I_t} + 4^{1 - I_t}: 3 for a shared sector, 5 otherwise.
  const double divisor = ci.sector == cj.sector ? 3.0 : 5.0;
  return zsum * (1.0 + y / divisor);
}

double flexibility(double ch, Action s) {
  require(ch >= 0.0 && ch <= 1.0, "change coefficient must lie in [0, 1]");
  require(s == kRetain || s == kUpgrade, "flexibility is defined for actions 1 and 2");
  const double first = static_cast<double>(s) / 2.0 - ch;
  if (first < 0.5) return first;
  return 0.5 - static_cast<double>(s) / 2.0 + ch;
}

double payoff(const GameInstance& inst, AgentId i, std::span<const Action> hood_config) {
  const auto hood = inst.graph().neighborhood(i);
  require(hood_config.size() == hood.size(), "configuration must cover exactly N_i");
  const auto self = static_cast<std::size_t>(std::lower_bound(hood.begin(), hood.end(), i) - hood.begin());
  const Action si = hood_config[self];
  double total = 0.0;
  for (std::size_t k = 0; k < hood.size(); ++k) {
    if (k == self) continue;
    total += pair_weight(inst, i, hood[k], si, hood_config[k]);
  }
  const auto& c = inst.company(i);
  return (1.0 + inst.flex_coeff(i) * flexibility(c.change_coeff, si)) * total;
}

namespace {
std::vector<Action> gather(const GameInstance& inst, AgentId i, const StrategyProfile& s) {
  require(s.size() == inst.agents(), "profile does not match the game");
  std::vector<Action> cfg;
  for (AgentId j : inst.graph().neighborhood(i)) cfg.push_back(s[j]);
  return cfg;
}
}  // namespace

double payoff(const GameInstance& inst, AgentId i, const StrategyProfile& s) {
  return payoff(inst, i, gather(inst, i, s));
}

double regret(const GameInstance& inst, AgentId i, std::span<const Action> hood_config) {
  const auto hood = inst.graph().neighborhood(i);
  require(hood_config.size() == hood.size(), "configuration must cover exactly N_i");
  const auto self = static_cast<std::size_t>(std::lower_bound(hood.begin(), hood.end(), i) - hood.begin());
  std::vector<Action> alt(hood_config.begin(), hood_config.end());
  const double current = payoff(inst, i, hood_config);
  double best = current;
  for (Action a = kRetain; a <= kUpgrade; ++a) {
    alt[self] = a;
    best = std::max(best, payoff(inst, i, alt));
  }
  return best - current;
}

double regret(const GameInstance& inst, AgentId i, const StrategyProfile& s) {
  return regret(inst, i, gather(inst, i, s));
}

RegretTable regret_table(const GameInstance& inst, AgentId i) {
  const auto hood = inst.graph().neighborhood(i);
  const auto space = inst.space();
  RegretTable t{i, {hood.begin(), hood.end()}, {}};
  const std::size_t m = space.config_count(hood);
  t.values.reserve(m);
  for (std::size_t c = 0; c < m; ++c) t.values.push_back(regret(inst, i, space.local_config(hood, c)));
  return t;
}

std::vector<RegretTable> regret_tables(const GameInstance& inst) {
  std::vector<RegretTable> out;
  for (AgentId i = 0; i < inst.agents(); ++i) out.push_back(regret_table(inst, i));
  return out;
}

}  // namespace gmm::game
