#pragma once

#include <span>
#include <vector>

#include "gmm/core/dataset.hpp"
#include "gmm/core/gmm.hpp"

namespace gmm::combine {

/// Gradient-ascent settings shared by the lambda fit and the pool-weight
/// fit. The objective is the mean log-likelihood, so step sizes do not
/// depend on the dataset size.
struct FitConfig {
  double learning_rate = 0.05;
  double gradient_tolerance = 1e-6;
  std::size_t max_iterations = 10000;
  double lambda_floor = 1e-6;

  void validate() const;
  friend bool operator==(const FitConfig&, const FitConfig&) = default;
};

struct FitResult {
  Gmm model;
  std::vector<double> trace;  // mean log-likelihood after each accepted step (first = start)
  std::size_t iterations = 0;
  bool converged = false;     // projected gradient fell below tolerance
};

/// dL/dlambda_i = -sum_k eps_i(s^k_{N_i}) + |D| E_model[eps_i], with the
/// expectation computed exactly. Unnormalized (sum over the data).
std::vector<double> regret_loglik_gradient(const Gmm& model, const PlayDataset& data);

/// Exact data log-likelihood sum_k log Pr(s^k) without the scoring floor.
double log_likelihood(const Gmm& model, const PlayDataset& data);

/// Per-agent mean regret over the data, eps_i averaged over profiles.
std::vector<double> mean_regrets(const Gmm& model, const PlayDataset& data);

/// Barzilai-Borwein step for gradient ascent: |s|^2 / (s.y), or the short
/// form (s.y) / |y|^2, where s is the last parameter change and y the
/// gradient decrease; `fallback` when the curvature estimate is not positive.
double bb_step(std::span<const double> x, std::span<const double> x_prev, std::span<const double> g,
               std::span<const double> g_prev, double fallback, bool short_step = false);

/// Projected gradient ascent on mean log-likelihood over lambda:
/// lambda <- max(lambda + step * grad, floor), with the step halved until
/// the objective strictly increases. Stops when the projected gradient's
/// sup-norm drops below tolerance, when no step size improves the objective,
/// or after max_iterations.
FitResult fit_regret_gmm_ml(const Gmm& init, const PlayDataset& data, const FitConfig& cfg);

}  // namespace gmm::combine
