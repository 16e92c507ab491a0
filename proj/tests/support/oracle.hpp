#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's inference, payoff or kernel code: profiles are enumerated with a
// plain odometer, potentials come from the generator that produced them, and
// payoffs are evaluated straight from the game formulas.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "gmm/core/dataset.hpp"
#include "gmm/core/gmm.hpp"
#include "gmm/game/partnership.hpp"

namespace oracle {

using Actions = std::vector<int>;  // 1-based, one per agent

/// Calls f on every joint profile, agent 0 varying fastest.
inline void for_each_profile(const std::vector<int>& counts, const std::function<void(const Actions&)>& f) {
  Actions s(counts.size(), 1);
  while (true) {
    f(s);
    std::size_t k = 0;
    while (k < s.size() && s[k] == counts[k]) s[k++] = 1;
    if (k == s.size()) return;
    ++s[k];
  }
}

/// Table-form model described by an explicit potential per (agent, scope
/// configuration). The oracle evaluates potentials from `values` keyed by
/// the configuration itself, never by the library's local index.
struct ExplicitModel {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<int> counts;
  std::vector<std::vector<std::size_t>> scopes;
  std::vector<std::map<Actions, double>> values;

  double potential(std::size_t i, const Actions& s) const {
    Actions key;
    for (auto a : scopes[i]) key.push_back(s[a]);
    return values[i].at(key);
  }

  double weight(const Actions& s) const {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) w *= potential(i, s);
    return w;
  }

  double partition() const {
    double z = 0.0;
    for_each_profile(counts, [&](const Actions& s) { z += weight(s); });
    return z;
  }

  /// Library model holding the same potentials. Tables follow the library's
  /// documented layout: first scope agent least significant.
  gmm::Gmm build() const {
    std::vector<gmm::Edge> e(edges.begin(), edges.end());
    gmm::InteractionGraph g(n, e);
    gmm::ProfileSpace space(counts);
    std::vector<gmm::LocalPotential> pots;
    for (std::size_t i = 0; i < n; ++i) {
      gmm::LocalPotential p;
      p.owner = i;
      p.scope = scopes[i];
      std::vector<int> scope_counts;
      for (auto a : scopes[i]) scope_counts.push_back(counts[a]);
      for_each_profile(scope_counts, [&](const Actions& cfg) { p.values.push_back(values[i].at(cfg)); });
      pots.push_back(std::move(p));
    }
    return gmm::Gmm::from_potentials(g, space, std::move(pots));
  }
};

/// Random model on 2-4 agents: random edges, 2 or 3 actions per agent,
/// potentials over the full neighborhood or over the agent alone.
inline ExplicitModel random_model(std::mt19937_64& rng, std::size_t n, bool allow_ternary = true) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ExplicitModel m;
  m.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u(rng) < 0.6) m.edges.emplace_back(i, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) m.counts.push_back(allow_ternary && u(rng) < 0.3 ? 3 : 2);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> scope{i};
    if (u(rng) < 0.75) {
      for (auto [a, b] : m.edges) {
        if (a == i) scope.push_back(b);
        if (b == i) scope.push_back(a);
      }
      std::sort(scope.begin(), scope.end());
    }
    std::vector<int> scope_counts;
    for (auto a : scope) scope_counts.push_back(m.counts[a]);
    std::map<Actions, double> vals;
    for_each_profile(scope_counts, [&](const Actions& cfg) { vals[cfg] = 0.1 + 4.9 * u(rng); });
    m.scopes.push_back(scope);
    m.values.push_back(std::move(vals));
  }
  return m;
}

// ---- partnership game, straight from the formulas -------------------------

inline double phi(double ch, int s) {
  const double first = s / 2.0 - ch;
  return first < 0.5 ? first : 0.5 - s / 2.0 + ch;
}

inline double pair_w(const gmm::game::GameInstance& g, std::size_t i, std::size_t j, int si, int sj) {
  const auto& ci = g.company(i);
  const auto& cj = g.company(j);
  const int is = si == sj ? 1 : 0;
  const int it = ci.sector == cj.sector ? 1 : 0;
  const double divisor = std::pow(2.0, it) + std::pow(4.0, 1 - it);
  return (ci.size + cj.size) * std::pow(1.0 + g.pair_coeff(i, j) / divisor, is);
}

/// u_i on a full profile.
inline double payoff(const gmm::game::GameInstance& g, std::size_t i, const Actions& s) {
  double sum = 0.0;
  for (std::size_t j = 0; j < g.agents(); ++j) {
    if (j != i && g.graph().has_edge(i, j)) sum += pair_w(g, i, j, s[i], s[j]);
  }
  return (1.0 + g.flex_coeff(i) * phi(g.company(i).change_coeff, s[i])) * sum;
}

inline double regret(const gmm::game::GameInstance& g, std::size_t i, const Actions& s) {
  double best = -1e300;
  for (int a = 1; a <= 2; ++a) {
    Actions t = s;
    t[i] = a;
    best = std::max(best, payoff(g, i, t));
  }
  return best - payoff(g, i, s);
}

/// Joint distribution of the regret GMM with the given lambda, by brute force.
inline std::vector<double> regret_joint(const gmm::game::GameInstance& g, const std::vector<double>& lambda) {
  std::vector<double> w;
  double z = 0.0;
  for_each_profile(std::vector<int>(g.agents(), 2), [&](const Actions& s) {
    double v = 1.0;
    for (std::size_t i = 0; i < g.agents(); ++i) v *= std::exp(-lambda[i] * regret(g, i, s));
    w.push_back(v);
    z += v;
  });
  for (double& v : w) v /= z;
  return w;
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs_floor);
}

// ---- regret-form models ------------------------------------------------------

/// Regret-form model with explicit regret values per neighborhood
/// configuration. Every agent's scope is its full neighborhood, so the
/// same structure serves as the parametric family in fitting tests.
struct RegretModel {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> scopes;
  std::vector<std::map<Actions, double>> regrets;

  double regret(std::size_t i, const Actions& s) const {
    Actions key;
    for (auto a : scopes[i]) key.push_back(s[a]);
    return regrets[i].at(key);
  }

  /// Normalized joint over all profiles, in odometer order.
  std::vector<double> joint(const std::vector<double>& lambda) const {
    std::vector<double> logw;
    for_each_profile(std::vector<int>(n, 2), [&](const Actions& s) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v -= lambda[i] * regret(i, s);
      logw.push_back(v);
    });
    const double mx = *std::max_element(logw.begin(), logw.end());
    double z = 0.0;
    for (double v : logw) z += std::exp(v - mx);
    for (double& v : logw) v = std::exp(v - mx) / z;
    return logw;
  }

  /// Sum over profiles of log Pr, straight from the definition.
  double loglik(const std::vector<double>& lambda, const std::vector<Actions>& data) const {
    std::vector<double> logw;
    for_each_profile(std::vector<int>(n, 2), [&](const Actions& s) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v -= lambda[i] * regret(i, s);
      logw.push_back(v);
    });
    const double mx = *std::max_element(logw.begin(), logw.end());
    double z = 0.0;
    for (double v : logw) z += std::exp(v - mx);
    const double log_z = mx + std::log(z);
    double total = 0.0;
    for (const auto& s : data) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v -= lambda[i] * regret(i, s);
      total += v - log_z;
    }
    return total;
  }

  gmm::Gmm build(const std::vector<double>& lambda) const {
    std::vector<gmm::Edge> e(edges.begin(), edges.end());
    std::vector<gmm::RegretTable> tables;
    for (std::size_t i = 0; i < n; ++i) {
      gmm::RegretTable t;
      t.owner = i;
      t.scope = scopes[i];
      for_each_profile(std::vector<int>(scopes[i].size(), 2), [&](const Actions& cfg) {
        t.values.push_back(regrets[i].at(cfg));
      });
      tables.push_back(std::move(t));
    }
    return gmm::Gmm::from_regrets(gmm::InteractionGraph(n, e), gmm::ProfileSpace::binary(n), std::move(tables),
                                  lambda);
  }
};

/// Binary regret model on n agents: a path plus random chords, regrets in
/// [0, 2] with a zero somewhere in every neighborhood slice, as a real
/// regret would have.
inline RegretModel random_regret_model(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RegretModel m;
  m.n = n;
  for (std::size_t i = 0; i + 1 < n; ++i) m.edges.emplace_back(i, i + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (u(rng) < 0.4) m.edges.emplace_back(i, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> scope{i};
    for (auto [a, b] : m.edges) {
      if (a == i) scope.push_back(b);
      if (b == i) scope.push_back(a);
    }
    std::sort(scope.begin(), scope.end());
    std::map<Actions, double> vals;
    const std::size_t own = static_cast<std::size_t>(std::find(scope.begin(), scope.end(), i) - scope.begin());
    for_each_profile(std::vector<int>(scope.size(), 2), [&](const Actions& cfg) {
      Actions other = cfg;
      other[own] = 3 - cfg[own];
      if (vals.count(other)) {
        // One of the two own actions is the best response: zero regret.
        vals[cfg] = vals[other] > 0.0 ? 0.0 : 2.0 * u(rng) + 0.05;
      } else {
        vals[cfg] = u(rng) < 0.5 ? 0.0 : 2.0 * u(rng) + 0.05;
      }
    });
    m.scopes.push_back(scope);
    m.regrets.push_back(std::move(vals));
  }
  return m;
}

inline std::vector<Actions> to_actions(const gmm::PlayDataset& d) {
  std::vector<Actions> out;
  for (const auto& s : d) out.emplace_back(s.actions().begin(), s.actions().end());
  return out;
}

}  // namespace oracle
