#include "gmm/game/regret_model.hpp"

#include <cmath>

#include "gmm/util/error.hpp"

namespace gmm::game {

Temperatures Temperatures::from_temperatures(const std::vector<double>& temps) {
  std::vector<double> lambda;
  lambda.reserve(temps.size());
  for (double t : temps) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("temperatures must be finite and > 0");
    lambda.push_back(1.0 / t);
  }
  return from_lambda(std::move(lambda));
}

Temperatures Temperatures::from_lambda(std::vector<double> lambda) {
  for (double l : lambda) {
    if (!(l > 0.0) || !std::isfinite(l)) throw ValidationError("lambda must be finite and > 0");
  }
  Temperatures t;
  t.lambda_ = std::move(lambda);
  return t;
}

Temperatures Temperatures::sample(std::size_t n, double lo, double hi, Rng& rng) {
  if (!(lo > 0.0 && hi >= lo)) throw ValidationError("temperature range must satisfy 0 < lo <= hi");
  std::vector<double> temps(n);
  for (auto& t : temps) t = lo + (hi - lo) * uniform01(rng);
  return from_temperatures(temps);
}

std::vector<double> Temperatures::temperatures() const {
  std::vector<double> t;
  for (double l : lambda_) t.push_back(1.0 / l);
  return t;
}

Gmm build_regret_gmm(const GameInstance& inst, const Temperatures& temps) {
  if (temps.lambda().size() != inst.agents()) throw ValidationError("need one temperature per agent");
  return Gmm::from_regrets(inst.graph(), inst.space(), regret_tables(inst), temps.lambda());
}

Gmm build_regret_gmm(const GameInstance& inst, double lambda_value) {
  return build_regret_gmm(inst, Temperatures::from_lambda(std::vector<double>(inst.agents(), lambda_value)));
}

}  // namespace gmm::game
