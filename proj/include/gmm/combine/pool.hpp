#pragma once

#include <memory>
#include <vector>

#include "gmm/combine/fit.hpp"
#include "gmm/core/dataset.hpp"
#include "gmm/core/gmm.hpp"

namespace gmm::combine {

/// Logarithmic opinion pool: Pr(s) ∝ Pr_1(s)^w * Pr_2(s)^{1-w}.
class PooledModel {
 public:
  PooledModel(Gmm g1, Gmm g2, double weight);

  const Gmm& first() const noexcept { return g1_; }
  const Gmm& second() const noexcept { return g2_; }
  double weight() const noexcept { return w_; }
  std::size_t agents() const noexcept { return g1_.agents(); }
  const ProfileSpace& space() const noexcept { return g1_.space(); }

  /// Pooled log weights w*log Pr_1 + (1-w)*log Pr_2 and their normalizer,
  /// computed at construction.
  const OutcomeTable& outcomes() const noexcept { return *table_; }

 private:
  Gmm g1_;
  Gmm g2_;
  double w_;
  std::shared_ptr<const OutcomeTable> table_;
};

double pool_probability(const PooledModel& pool, const StrategyProfile& s);
double log_probability(const PooledModel& pool, const StrategyProfile& s);
double log_score(const PooledModel& pool, const PlayDataset& data);

/// The pool expressed as one GMM with potentials pi1_i^w * pi2_i^{1-w} over
/// the union of the two scopes. Same distribution as the pool.
Gmm pooled_as_gmm(const PooledModel& pool);

/// Exact L(D | w) = sum_k log Pr_pool(s^k) and its derivative
/// sum_k [log Pr_1 - log Pr_2](s^k) - |D| E_pool[log Pr_1 - log Pr_2].
double pool_log_likelihood(const Gmm& g1, const Gmm& g2, const PlayDataset& data, double w);
double pool_weight_gradient(const Gmm& g1, const Gmm& g2, const PlayDataset& data, double w);

struct PoolWeightResult {
  double weight = 0.5;
  std::vector<double> trace;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Ascent on the mean of L(D | w) from w = 0.5 with step `beta` (halved on
/// a decrease), w clamped to [0, 1].
PoolWeightResult learn_pool_weight(const Gmm& g1, const Gmm& g2, const PlayDataset& heldout,
                                   double beta, const FitConfig& cfg);

}  // namespace gmm::combine
