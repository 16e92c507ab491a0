#include "gmm/combine/methods.hpp"

#include <numeric>

#include "gmm/util/error.hpp"
#include "gmm/util/rng.hpp"

namespace gmm::combine {

FitResult direct_update(const Gmm& g1, const PlayDataset& data, const FitConfig& cfg) {
  return fit_regret_gmm_ml(g1, data, cfg);
}

Gmm unit_lambda(const Gmm& family) {
  if (!family.is_regret_form()) throw PreconditionError("parametric family must be in regret form");
  return family.with_lambda(std::vector<double>(family.agents(), 1.0));
}

OpinionPoolResult opinion_pool(const Gmm& g1, const Gmm& family, const PlayDataset& data,
                               const FitConfig& fit_cfg, double beta) {
  require(data.size() >= 2, "opinion pool needs at least two profiles to split");
  const std::size_t fit_half = (data.size() + 1) / 2;
  auto g2 = fit_regret_gmm_ml(unit_lambda(family), data.head(fit_half), fit_cfg);
  auto w = learn_pool_weight(g1, g2.model, data.slice(fit_half, data.size()), beta, fit_cfg);
  PooledModel pool(g1, g2.model, w.weight);
  return {std::move(pool), std::move(g2), std::move(w)};
}

OpinionPoolResult opinion_pool(const Gmm& g1, const PlayDataset& data, const FitConfig& fit_cfg,
                               double beta) {
  return opinion_pool(g1, g1, data, fit_cfg, beta);
}

namespace {

/// `k` distinct positions of [0, n), uniformly, in draw order.
std::vector<std::size_t> choose(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t t = 0; t < k; ++t) {
    const auto j = t + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n - t));
    std::swap(idx[t], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace

MixResult mixing_data(const Gmm& g1, const Gmm& family, const PlayDataset& data,
                      const FitConfig& fit_cfg, std::uint64_t seed) {
  require(data.size() >= 2, "mixing data needs at least two profiles");
  const std::size_t m = data.size();
  Rng rng(seed);
  const auto sampled = sample_profiles(g1, m, rng);
  const std::size_t from_data = (m + 1) / 2;
  PlayDataset mixed(data.agents());
  mixed.reserve(m);
  for (auto k : choose(m, from_data, rng)) mixed.push_back(data[k]);
  for (auto k : choose(m, m - from_data, rng)) mixed.push_back(sampled[k]);
  auto fit = fit_regret_gmm_ml(unit_lambda(family), mixed, fit_cfg);
  return {std::move(fit), std::move(mixed)};
}

MixResult mixing_data(const Gmm& g1, const PlayDataset& data, const FitConfig& fit_cfg,
                      std::uint64_t seed) {
  return mixing_data(g1, g1, data, fit_cfg, seed);
}

double score_ratio(double base_score, double combined_score) {
  if (!(base_score < 0.0) || !(combined_score < 0.0)) {
    throw PreconditionError("score ratio needs strictly negative scores");
  }
  return base_score / combined_score;
}

}  // namespace gmm::combine
