#include "gmm/combine/fit.hpp"

#include <algorithm>
#include <cmath>

#include "gmm/core/inference.hpp"
#include "gmm/kernels/enumerate.hpp"
#include "gmm/util/error.hpp"

namespace gmm::combine {

void FitConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ValidationError("fit.learning_rate must be > 0");
  if (!(gradient_tolerance > 0.0)) throw ValidationError("fit.gradient_tolerance must be > 0");
  if (max_iterations < 1) throw ValidationError("fit.max_iterations must be >= 1");
  if (!(lambda_floor > 0.0)) throw ValidationError("fit.lambda_floor must be > 0");
}

namespace {

void require_regret_form(const Gmm& model) {
  if (!model.is_regret_form()) throw PreconditionError("gradient requires parametric form");
}

/// Profiles x agents regret matrix of a regret-form model; turns the
/// log-likelihood and its gradient into two dense sweeps.
class RegretDesign {
 public:
  explicit RegretDesign(const Gmm& family)
      : agents_(family.agents()), matrix_(family.space().profile_count() * family.agents()) {
    if (!family.within_exact_cap()) throw ModelTooLargeError();
    const auto layout = kernels::FactorLayout::build(family.space(), family.regrets());
    kernels::factor_matrix(layout, matrix_);
    log_w_.resize(family.space().profile_count());
    prob_.resize(log_w_.size());
  }

  /// Mean log-likelihood given per-agent mean data regrets.
  double objective(std::span<const double> lambda, std::span<const double> data_mean) {
    kernels::linear_scores(matrix_, agents_, lambda, log_w_);
    for (double& v : log_w_) v = -v;
    log_z_ = kernels::log_sum_exp(log_w_);
    double obj = -log_z_;
    for (std::size_t i = 0; i < agents_; ++i) obj -= lambda[i] * data_mean[i];
    return obj;
  }

  /// Gradient at the lambda of the last objective() call.
  void gradient(std::span<const double> data_mean, std::span<double> out) {
    kernels::exp_shifted(log_w_, log_z_, prob_);
    kernels::weighted_column_sums(matrix_, agents_, prob_, out);
    for (std::size_t i = 0; i < agents_; ++i) out[i] -= data_mean[i];
  }

 private:
  std::size_t agents_;
  std::vector<double> matrix_;
  std::vector<double> log_w_;
  std::vector<double> prob_;
  double log_z_ = 0.0;
};

double projected_sup(std::span<const double> lambda, std::span<const double> grad, double floor) {
  double sup = 0.0;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (lambda[i] <= floor && grad[i] < 0.0) continue;
    sup = std::max(sup, std::abs(grad[i]));
  }
  return sup;
}

}  // namespace

double bb_step(std::span<const double> x, std::span<const double> x_prev, std::span<const double> g,
               std::span<const double> g_prev, double fallback, bool short_step) {
  double ss = 0.0, sy = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = x[i] - x_prev[i];
    const double y = g_prev[i] - g[i];  // ascent on a concave objective: s.y >= 0
    ss += s * s;
    sy += s * y;
    yy += y * y;
  }
  if (!(sy > 0.0) || !(ss > 0.0)) return fallback;
  return std::clamp(short_step ? sy / yy : ss / sy, 1e-12, 1e12);
}

std::vector<double> mean_regrets(const Gmm& model, const PlayDataset& data) {
  require_regret_form(model);
  require(!data.empty(), "fitting needs a non-empty dataset");
  check_compatible(model, data);
  std::vector<double> mean(model.agents(), 0.0);
  for (const auto& t : model.regrets()) {
    double acc = 0.0;
    for (const auto& s : data) acc += t.values[model.space().local_index(t.scope, s)];
    mean[t.owner] = acc / static_cast<double>(data.size());
  }
  return mean;
}

std::vector<double> regret_loglik_gradient(const Gmm& model, const PlayDataset& data) {
  require_regret_form(model);
  const auto mean = mean_regrets(model, data);
  const auto m = static_cast<double>(data.size());
  std::vector<double> grad(model.agents());
  for (const auto& t : model.regrets()) {
    grad[t.owner] = -mean[t.owner] * m + m * expectation_of_table(model, t.owner, t.values);
  }
  return grad;
}

double log_likelihood(const Gmm& model, const PlayDataset& data) {
  require(!data.empty(), "log-likelihood needs a non-empty dataset");
  check_compatible(model, data);
  const auto& t = model.outcomes();
  double ll = 0.0;
  for (const auto& s : data) ll += t.log_weight[model.space().index_of(s)] - t.log_z;
  return ll;
}

FitResult fit_regret_gmm_ml(const Gmm& init, const PlayDataset& data, const FitConfig& cfg) {
  require_regret_form(init);
  cfg.validate();
  const auto data_mean = mean_regrets(init, data);
  const std::size_t n = init.agents();
  RegretDesign design(init);

  std::vector<double> lambda(init.lambda().begin(), init.lambda().end());
  for (double& l : lambda) l = std::max(l, cfg.lambda_floor);
  std::vector<double> grad(n), cand(n);

  FitResult r;
  double obj = design.objective(lambda, data_mean);
  if (!std::isfinite(obj)) throw FitError("log-likelihood is not finite at the start", {obj});
  design.gradient(data_mean, grad);
  r.trace.push_back(obj);

  // Step sizes follow the Barzilai-Borwein rule, with learning_rate as the
  // first and fallback step; backtracking keeps every accepted step an ascent.
  double step = cfg.learning_rate;
  std::vector<double> prev_lambda(n), prev_grad(n);
  for (r.iterations = 0; r.iterations < cfg.max_iterations; ++r.iterations) {
    if (projected_sup(lambda, grad, cfg.lambda_floor) < cfg.gradient_tolerance) {
      r.converged = true;
      break;
    }
    bool accepted = false;
    double cand_obj = obj;
    for (int halvings = 0; halvings < 80; ++halvings) {
      for (std::size_t i = 0; i < n; ++i) cand[i] = std::max(lambda[i] + step * grad[i], cfg.lambda_floor);
      cand_obj = design.objective(cand, data_mean);
      if (std::isnan(cand_obj)) throw FitError("log-likelihood became NaN", r.trace);
      if (cand_obj > obj) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    // No step size improves the objective: numerically stationary.
    if (!accepted) break;
    prev_lambda.swap(lambda);
    lambda.swap(cand);
    prev_grad.swap(grad);
    obj = cand_obj;
    design.gradient(data_mean, grad);
    for (double g : grad) {
      if (!std::isfinite(g)) throw FitError("gradient is not finite", r.trace);
    }
    r.trace.push_back(obj);
    step = bb_step(lambda, prev_lambda, grad, prev_grad, cfg.learning_rate, r.iterations % 2 == 1);
  }
  if (!r.converged && projected_sup(lambda, grad, cfg.lambda_floor) < cfg.gradient_tolerance) {
    r.converged = true;
  }
  r.model = init.with_lambda(std::move(lambda));
  return r;
}

}  // namespace gmm::combine
