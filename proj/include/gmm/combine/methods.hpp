#pragma once

#include <concepts>
#include <cstdint>

#include "gmm/combine/fit.hpp"
#include "gmm/combine/pool.hpp"
#include "gmm/core/inference.hpp"

namespace gmm::combine {

/// directG: lambda of G1 refit by maximum likelihood on the data.
FitResult direct_update(const Gmm& g1, const PlayDataset& data, const FitConfig& cfg);

/// Regret-form start over `family`'s regret tables with every lambda = 1.
Gmm unit_lambda(const Gmm& family);

struct OpinionPoolResult {
  PooledModel pool;
  FitResult g2_fit;
  PoolWeightResult weight_fit;
};

/// OPG: the first ceil(|D|/2) profiles fit G2 (regret form over `family`,
/// unit-lambda start); the rest learn the pool weight w.
OpinionPoolResult opinion_pool(const Gmm& g1, const Gmm& family, const PlayDataset& data,
                               const FitConfig& fit_cfg, double beta);
OpinionPoolResult opinion_pool(const Gmm& g1, const PlayDataset& data, const FitConfig& fit_cfg,
                               double beta);

struct MixResult {
  FitResult fit;
  PlayDataset mixed;
};

/// mixG: draw |D| profiles D1 from G1, build mD from ceil(|D|/2) profiles of
/// D and floor(|D|/2) of D1 (each chosen uniformly without replacement),
/// then fit the regret form over `family` to mD from unit lambda.
MixResult mixing_data(const Gmm& g1, const Gmm& family, const PlayDataset& data,
                      const FitConfig& fit_cfg, std::uint64_t seed);
MixResult mixing_data(const Gmm& g1, const PlayDataset& data, const FitConfig& fit_cfg,
                      std::uint64_t seed);

template <class M>
concept ScoredModel = requires(const M& m, const PlayDataset& d) {
  { log_score(m, d) } -> std::convertible_to<double>;
};

/// R = Score(base) / Score(combined); R > 1 means the combined model scores
/// higher (less negative).
double score_ratio(double base_score, double combined_score);

template <ScoredModel B, ScoredModel C>
double score_ratio(const B& base, const C& combined, const PlayDataset& test) {
  return score_ratio(log_score(base, test), log_score(combined, test));
}

}  // namespace gmm::combine
