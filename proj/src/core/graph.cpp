#include "gmm/core/graph.hpp"

#include <algorithm>
#include <string>

#include "gmm/util/error.hpp"

namespace gmm {

InteractionGraph::InteractionGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  if (n == 0) throw ValidationError("interaction graph needs at least one agent");
  for (auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw ValidationError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") references an agent outside [0, " + std::to_string(n) + ")");
    }
    if (a == b) throw ValidationError("self-loop on agent " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw ValidationError("duplicate edge (" + std::to_string(dup->first) + ", " +
                          std::to_string(dup->second) + ")");
  }
  edges_ = std::move(edges);

  partners_.assign(n, {});
  for (const auto& [a, b] : edges_) {
    partners_[a].push_back(b);
    partners_[b].push_back(a);
  }
  neighborhoods_.resize(n);
  for (AgentId i = 0; i < n; ++i) {
    std::sort(partners_[i].begin(), partners_[i].end());
    auto& hood = neighborhoods_[i];
    hood = partners_[i];
    hood.insert(std::lower_bound(hood.begin(), hood.end(), i), i);
  }
}

void InteractionGraph::check_agent(AgentId i) const {
  if (i >= n_) throw PreconditionError("agent " + std::to_string(i) + " out of range");
}

std::span<const AgentId> InteractionGraph::neighborhood(AgentId i) const {
  check_agent(i);
  return neighborhoods_[i];
}

std::span<const AgentId> InteractionGraph::partners(AgentId i) const {
  check_agent(i);
  return partners_[i];
}

bool InteractionGraph::has_edge(AgentId i, AgentId j) const {
  if (i >= n_ || j >= n_ || i == j) return false;
  return std::binary_search(partners_[i].begin(), partners_[i].end(), j);
}

InteractionGraph InteractionGraph::induced(std::span<const AgentId> agents) const {
  std::vector<Edge> sub;
  for (std::size_t a = 0; a < agents.size(); ++a) {
    check_agent(agents[a]);
    for (std::size_t b = a + 1; b < agents.size(); ++b) {
      if (has_edge(agents[a], agents[b])) sub.emplace_back(a, b);
    }
  }
  return InteractionGraph(agents.size(), std::move(sub));
}

}  // namespace gmm
