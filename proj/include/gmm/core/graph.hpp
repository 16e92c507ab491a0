#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gmm {

using AgentId = std::size_t;
using Edge = std::pair<AgentId, AgentId>;

/// Undirected interaction graph over agents [0, n). Edges are stored
/// normalized (first < second) and sorted. Each agent's neighborhood is the
/// sorted set of its partners plus itself.
class InteractionGraph {
 public:
  InteractionGraph() = default;
  InteractionGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// N_i, sorted, always contains i.
  std::span<const AgentId> neighborhood(AgentId i) const;
  /// N_i without i, sorted.
  std::span<const AgentId> partners(AgentId i) const;
  std::size_t degree(AgentId i) const { return partners(i).size(); }
  bool has_edge(AgentId i, AgentId j) const;

  /// Subgraph on `agents` (relabelled 0..k-1 in the given order).
  InteractionGraph induced(std::span<const AgentId> agents) const;

  friend bool operator==(const InteractionGraph& a, const InteractionGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void check_agent(AgentId i) const;

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<AgentId>> neighborhoods_;
  std::vector<std::vector<AgentId>> partners_;
};

}  // namespace gmm
