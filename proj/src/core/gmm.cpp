#include "gmm/core/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "gmm/kernels/enumerate.hpp"
#include "gmm/util/error.hpp"

namespace gmm {

namespace detail {
struct OutcomeCache {
  std::once_flag once;
  OutcomeTable table;
};
}  // namespace detail

namespace {

void check_shape(const InteractionGraph& graph, const ProfileSpace& space,
                 const std::vector<NeighborhoodTable>& tables, bool full_neighborhood) {
  if (space.agents() != graph.size()) {
    throw ValidationError("action space and graph disagree on the agent count");
  }
  if (tables.size() != graph.size()) {
    throw ValidationError("expected one table per agent");
  }
  for (AgentId i = 0; i < tables.size(); ++i) {
    const auto& t = tables[i];
    if (t.owner != i) throw ValidationError("table " + std::to_string(i) + " has owner " + std::to_string(t.owner));
    const auto hood = graph.neighborhood(i);
    if (full_neighborhood) {
      if (!std::equal(t.scope.begin(), t.scope.end(), hood.begin(), hood.end())) {
        throw ValidationError("regret table " + std::to_string(i) + " must span N_i");
      }
    } else {
      if (!std::is_sorted(t.scope.begin(), t.scope.end()) ||
          std::adjacent_find(t.scope.begin(), t.scope.end()) != t.scope.end() ||
          !std::includes(hood.begin(), hood.end(), t.scope.begin(), t.scope.end())) {
        throw ValidationError("potential " + std::to_string(i) + " scope must be a sorted subset of N_i");
      }
    }
    if (t.values.size() != space.config_count(t.scope)) {
      throw ValidationError("table " + std::to_string(i) + " does not cover all configurations");
    }
  }
}

}  // namespace

Gmm Gmm::from_potentials(InteractionGraph graph, ProfileSpace space,
                         std::vector<LocalPotential> potentials) {
  check_shape(graph, space, potentials, false);
  for (const auto& p : potentials) {
    for (double v : p.values) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError("invalid model: potential of agent " + std::to_string(p.owner) +
                              " is not strictly positive");
      }
    }
  }
  Gmm m;
  m.form_ = ModelForm::table;
  m.graph_ = std::move(graph);
  m.space_ = std::move(space);
  m.potentials_ = std::move(potentials);
  m.build_log_tables();
  return m;
}

Gmm Gmm::from_regrets(InteractionGraph graph, ProfileSpace space,
                      std::vector<RegretTable> regrets, std::vector<double> lambda) {
  check_shape(graph, space, regrets, true);
  for (const auto& r : regrets) {
    for (double v : r.values) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("regrets must be finite and >= 0");
    }
  }
  Gmm m;
  m.form_ = ModelForm::regret;
  m.graph_ = std::move(graph);
  m.space_ = std::move(space);
  m.regrets_ = std::move(regrets);
  return m.with_lambda(std::move(lambda));
}

Gmm Gmm::with_lambda(std::vector<double> lambda) const {
  if (form_ != ModelForm::regret) throw PreconditionError("model is not in regret form");
  if (lambda.size() != agents()) throw ValidationError("need one lambda per agent");
  for (double l : lambda) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw ValidationError("lambda must be finite and >= 0");
  }
  Gmm m;
  m.form_ = ModelForm::regret;
  m.graph_ = graph_;
  m.space_ = space_;
  m.regrets_ = regrets_;
  m.lambda_ = std::move(lambda);
  m.build_log_tables();
  return m;
}

void Gmm::build_log_tables() {
  log_potentials_.clear();
  if (form_ == ModelForm::table) {
    for (const auto& p : potentials_) {
      NeighborhoodTable t{p.owner, p.scope, {}};
      t.values.reserve(p.values.size());
      for (double v : p.values) t.values.push_back(std::log(v));
      log_potentials_.push_back(std::move(t));
    }
  } else {
    potentials_.clear();
    for (const auto& r : regrets_) {
      NeighborhoodTable t{r.owner, r.scope, {}};
      NeighborhoodTable lin{r.owner, r.scope, {}};
      t.values.reserve(r.values.size());
      for (double e : r.values) {
        t.values.push_back(-lambda_[r.owner] * e);
        lin.values.push_back(std::exp(t.values.back()));
      }
      log_potentials_.push_back(std::move(t));
      potentials_.push_back(std::move(lin));
    }
  }
  cache_ = std::make_shared<detail::OutcomeCache>();
}

std::span<const double> Gmm::lambda() const {
  if (form_ != ModelForm::regret) throw PreconditionError("model is not in regret form");
  return lambda_;
}

const std::vector<RegretTable>& Gmm::regrets() const {
  if (form_ != ModelForm::regret) throw PreconditionError("model is not in regret form");
  return regrets_;
}

double Gmm::log_weight(const StrategyProfile& s) const {
  require(space_.valid(s), "strategy profile does not match the model");
  double acc = 0.0;
  for (const auto& t : log_potentials_) acc += t.values[space_.local_index(t.scope, s)];
  return acc;
}

bool Gmm::within_exact_cap() const noexcept {
  return agents() <= kMaxExactAgents && space_.profile_count() <= kMaxExactProfiles;
}

const OutcomeTable& Gmm::outcomes() const {
  if (!cache_) throw PreconditionError("empty model");
  if (!within_exact_cap()) throw ModelTooLargeError();
  std::call_once(cache_->once, [this] {
    auto& t = cache_->table;
    const auto layout = kernels::FactorLayout::build(space_, log_potentials_);
    t.log_weight.resize(space_.profile_count());
    kernels::factor_sums(layout, t.log_weight);
    t.log_z = kernels::log_sum_exp(t.log_weight);
    t.prob.resize(t.log_weight.size());
    kernels::exp_shifted(t.log_weight, t.log_z, t.prob);
  });
  return cache_->table;
}

std::string to_string(ModelForm form) {
  return form == ModelForm::table ? "table" : "regret";
}

}  // namespace gmm
