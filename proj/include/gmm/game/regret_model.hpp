#pragma once

#include <vector>

#include "gmm/core/gmm.hpp"
#include "gmm/game/partnership.hpp"
#include "gmm/util/rng.hpp"

namespace gmm::game {

/// Per-agent temperatures T_i > 0, held as lambda_i = 1 / T_i.
class Temperatures {
 public:
  static Temperatures from_temperatures(const std::vector<double>& temps);
  static Temperatures from_lambda(std::vector<double> lambda);
  /// T_i ~ U[lo, hi] independently.
  static Temperatures sample(std::size_t n, double lo, double hi, Rng& rng);

  const std::vector<double>& lambda() const noexcept { return lambda_; }
  std::vector<double> temperatures() const;

 private:
  std::vector<double> lambda_;
};

/// reG: pi_i(s_{N_i}) = exp(-eps_i(s_{N_i}) / T_i). The returned model keeps
/// the regret tables so lambda can be re-set without recomputing payoffs.
Gmm build_regret_gmm(const GameInstance& inst, const Temperatures& temps);

/// Regret-form model over the instance with every lambda_i = value.
Gmm build_regret_gmm(const GameInstance& inst, double lambda_value);

}  // namespace gmm::game
