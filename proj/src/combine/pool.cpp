#include "gmm/combine/pool.hpp"

#include <algorithm>
#include <cmath>

#include "gmm/core/inference.hpp"
#include "gmm/kernels/enumerate.hpp"
#include "gmm/util/error.hpp"

namespace gmm::combine {

namespace {

void check_pair(const Gmm& g1, const Gmm& g2) {
  if (!(g1.graph() == g2.graph()) || !(g1.space() == g2.space())) {
    throw PreconditionError("pooled models must share graph and action domains");
  }
}

/// log Pr_1(s) - log Pr_2(s) for every profile.
std::vector<double> log_ratio(const Gmm& g1, const Gmm& g2) {
  const auto& t1 = g1.outcomes();
  const auto& t2 = g2.outcomes();
  std::vector<double> d(t1.log_weight.size());
  for (std::size_t p = 0; p < d.size(); ++p) {
    d[p] = (t1.log_weight[p] - t1.log_z) - (t2.log_weight[p] - t2.log_z);
  }
  return d;
}

std::vector<double> log_prob(const Gmm& g) {
  const auto& t = g.outcomes();
  std::vector<double> out(t.log_weight.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = t.log_weight[p] - t.log_z;
  return out;
}

/// Pool state for fixed components; evaluates L(w)/|D| and its derivative.
class PoolObjective {
 public:
  PoolObjective(const Gmm& g1, const Gmm& g2, const PlayDataset& data)
      : lp2_(log_prob(g2)), diff_(log_ratio(g1, g2)) {
    check_pair(g1, g2);
    require(!data.empty(), "pool weight needs a non-empty dataset");
    check_compatible(g1, data);
    const auto m = static_cast<double>(data.size());
    for (const auto& s : data) {
      const auto p = g1.space().index_of(s);
      data_lp2_ += lp2_[p] / m;
      data_diff_ += diff_[p] / m;
    }
    log_w_.resize(diff_.size());
    prob_.resize(diff_.size());
  }

  // log Pr_pool(s) = log Pr_2(s) + w * diff(s) - log Z(w)
  double objective(double w) {
    for (std::size_t p = 0; p < diff_.size(); ++p) log_w_[p] = lp2_[p] + w * diff_[p];
    log_z_ = kernels::log_sum_exp(log_w_);
    return data_lp2_ + w * data_diff_ - log_z_;
  }

  double gradient() {
    kernels::exp_shifted(log_w_, log_z_, prob_);
    return data_diff_ - kernels::dot(prob_, diff_);
  }

 private:
  std::vector<double> lp2_;
  std::vector<double> diff_;
  std::vector<double> log_w_;
  std::vector<double> prob_;
  double data_lp2_ = 0.0;
  double data_diff_ = 0.0;
  double log_z_ = 0.0;
};

}  // namespace

PooledModel::PooledModel(Gmm g1, Gmm g2, double weight)
    : g1_(std::move(g1)), g2_(std::move(g2)), w_(weight) {
  check_pair(g1_, g2_);
  if (!(weight >= 0.0 && weight <= 1.0)) throw ValidationError("pool weight must lie in [0, 1]");
  const auto lp1 = log_prob(g1_);
  const auto lp2 = log_prob(g2_);
  auto t = std::make_shared<OutcomeTable>();
  t->log_weight.resize(lp1.size());
  for (std::size_t p = 0; p < lp1.size(); ++p) t->log_weight[p] = w_ * lp1[p] + (1.0 - w_) * lp2[p];
  t->log_z = kernels::log_sum_exp(t->log_weight);
  t->prob.resize(lp1.size());
  kernels::exp_shifted(t->log_weight, t->log_z, t->prob);
  table_ = std::move(t);
}

double pool_probability(const PooledModel& pool, const StrategyProfile& s) {
  return pool.outcomes().prob[pool.space().index_of(s)];
}

double log_probability(const PooledModel& pool, const StrategyProfile& s) {
  const auto& t = pool.outcomes();
  return t.log_weight[pool.space().index_of(s)] - t.log_z;
}

double log_score(const PooledModel& pool, const PlayDataset& data) {
  require(!data.empty(), "log score needs a non-empty dataset");
  check_compatible(pool.first(), data);
  const auto& t = pool.outcomes();
  const double floor = std::log(kProbabilityFloor);
  double score = 0.0;
  for (const auto& s : data) score += std::max(t.log_weight[pool.space().index_of(s)] - t.log_z, floor);
  return score;
}

Gmm pooled_as_gmm(const PooledModel& pool) {
  const auto& g1 = pool.first();
  const auto& g2 = pool.second();
  const auto& space = g1.space();
  const double w = pool.weight();
  std::vector<LocalPotential> pots;
  for (AgentId i = 0; i < g1.agents(); ++i) {
    const auto& a = g1.log_potentials()[i];
    const auto& b = g2.log_potentials()[i];
    std::vector<AgentId> scope;
    std::set_union(a.scope.begin(), a.scope.end(), b.scope.begin(), b.scope.end(), std::back_inserter(scope));
    LocalPotential pot{i, scope, std::vector<double>(space.config_count(scope))};
    for (std::size_t c = 0; c < pot.values.size(); ++c) {
      const auto cfg = space.local_config(scope, c);
      auto sub = [&](const NeighborhoodTable& t) {
        std::vector<Action> part;
        for (AgentId agent : t.scope) {
          part.push_back(cfg[static_cast<std::size_t>(std::lower_bound(scope.begin(), scope.end(), agent) - scope.begin())]);
        }
        return t.values[space.local_index(t.scope, part)];
      };
      pot.values[c] = std::exp(w * sub(a) + (1.0 - w) * sub(b));
    }
    pots.push_back(std::move(pot));
  }
  return Gmm::from_potentials(g1.graph(), space, std::move(pots));
}

double pool_log_likelihood(const Gmm& g1, const Gmm& g2, const PlayDataset& data, double w) {
  PoolObjective obj(g1, g2, data);
  return obj.objective(w) * static_cast<double>(data.size());
}

double pool_weight_gradient(const Gmm& g1, const Gmm& g2, const PlayDataset& data, double w) {
  PoolObjective obj(g1, g2, data);
  obj.objective(w);
  return obj.gradient() * static_cast<double>(data.size());
}

PoolWeightResult learn_pool_weight(const Gmm& g1, const Gmm& g2, const PlayDataset& heldout,
                                   double beta, const FitConfig& cfg) {
  cfg.validate();
  if (!(beta > 0.0)) throw ValidationError("pool learning rate must be > 0");
  PoolObjective f(g1, g2, heldout);
  PoolWeightResult r;
  double w = 0.5;
  double obj = f.objective(w);
  if (!std::isfinite(obj)) throw FitError("pool log-likelihood is not finite", {obj});
  double grad = f.gradient();
  r.trace.push_back(obj);
  auto projected = [](double w, double g) {
    if ((w <= 0.0 && g < 0.0) || (w >= 1.0 && g > 0.0)) return 0.0;
    return std::abs(g);
  };
  double step = beta;
  for (r.iterations = 0; r.iterations < cfg.max_iterations; ++r.iterations) {
    if (projected(w, grad) < cfg.gradient_tolerance) {
      r.converged = true;
      break;
    }
    bool accepted = false;
    double cand = w;
    double cand_obj = obj;
    for (int halvings = 0; halvings < 80; ++halvings) {
      cand = std::clamp(w + step * grad, 0.0, 1.0);
      cand_obj = f.objective(cand);
      if (std::isnan(cand_obj)) throw FitError("pool log-likelihood became NaN", r.trace);
      if (cand_obj > obj) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double prev_w = w, prev_grad = grad;
    w = cand;
    obj = cand_obj;
    grad = f.gradient();
    r.trace.push_back(obj);
    step = bb_step(std::span(&w, 1), std::span(&prev_w, 1), std::span(&grad, 1), std::span(&prev_grad, 1), beta);
  }
  if (!r.converged && projected(w, grad) < cfg.gradient_tolerance) r.converged = true;
  r.weight = w;
  return r;
}

}  // namespace gmm::combine
