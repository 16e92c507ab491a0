#include "gmm/core/inference.hpp"

#include <algorithm>
#include <cmath>

#include "gmm/kernels/enumerate.hpp"
#include "gmm/util/error.hpp"

namespace gmm {

void check_compatible(const Gmm& model, const PlayDataset& data) {
  if (data.agents() != model.agents()) {
    throw PreconditionError("dataset has " + std::to_string(data.agents()) +
                            " agents, model has " + std::to_string(model.agents()));
  }
}

double log_probability(const Gmm& model, const StrategyProfile& s) {
  const auto& t = model.outcomes();
  return t.log_weight[model.space().index_of(s)] - t.log_z;
}

double joint_probability(const Gmm& model, const StrategyProfile& s) {
  const auto& t = model.outcomes();
  return t.prob[model.space().index_of(s)];
}

double log_partition(const Gmm& model) { return model.outcomes().log_z; }

double log_score(const Gmm& model, const PlayDataset& data) {
  require(!data.empty(), "log score needs a non-empty dataset");
  check_compatible(model, data);
  const auto& t = model.outcomes();
  const double floor = std::log(kProbabilityFloor);
  double score = 0.0;
  for (const auto& s : data) {
    score += std::max(t.log_weight[model.space().index_of(s)] - t.log_z, floor);
  }
  return score;
}

PlayDataset sample_profiles(const Gmm& model, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  return sample_profiles(model, count, rng);
}

PlayDataset sample_profiles(const Gmm& model, std::size_t count, Rng& rng) {
  require(count > 0, "sample count must be positive");
  const auto& t = model.outcomes();
  std::vector<double> cdf(t.prob.size());
  double acc = 0.0;
  for (std::size_t p = 0; p < cdf.size(); ++p) cdf[p] = (acc += t.prob[p]);
  PlayDataset out(model.agents());
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double u = uniform01(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    // Skip zero-mass profiles that share the cumulative value.
    while (it != cdf.begin() && t.prob[static_cast<std::size_t>(it - cdf.begin())] == 0.0) --it;
    out.push_back(model.space().profile_at(static_cast<std::uint64_t>(it - cdf.begin())));
  }
  return out;
}

std::vector<double> scope_marginal(const Gmm& model, std::span<const AgentId> scope) {
  const auto& t = model.outcomes();
  std::vector<double> bins(model.space().config_count(scope), 0.0);
  kernels::scope_accumulate(model.space(), scope, t.prob, bins);
  return bins;
}

std::vector<double> marginal(const Gmm& model, AgentId agent) {
  require(agent < model.agents(), "agent out of range");
  const AgentId scope[] = {agent};
  return scope_marginal(model, scope);
}

double expectation_of_table(const Gmm& model, AgentId agent, std::span<const double> table) {
  require(agent < model.agents(), "agent out of range");
  const auto hood = model.graph().neighborhood(agent);
  require(table.size() == model.space().config_count(hood),
          "statistic table does not cover the neighborhood");
  const auto m = scope_marginal(model, hood);
  double e = 0.0;
  for (std::size_t c = 0; c < m.size(); ++c) e += m[c] * table[c];
  return e;
}

double expectation_of_statistic(const Gmm& model, const NeighborhoodStatistic& f, AgentId agent) {
  require(agent < model.agents(), "agent out of range");
  const auto hood = model.graph().neighborhood(agent);
  std::vector<double> table(model.space().config_count(hood));
  for (std::size_t c = 0; c < table.size(); ++c) table[c] = f(model.space().local_config(hood, c));
  return expectation_of_table(model, agent, table);
}

}  // namespace gmm
