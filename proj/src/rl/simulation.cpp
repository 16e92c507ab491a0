#include "gmm/rl/simulation.hpp"

#include <cmath>

#include "gmm/util/error.hpp"

namespace gmm::rl {

using nlohmann::json;

Policy Policy::heuristic(const game::GameInstance& inst, const heuristic::HeuristicSpec& spec) {
  const auto space = inst.space();
  std::vector<AgentPolicy> agents;
  for (AgentId i = 0; i < inst.agents(); ++i) {
    const auto partners = inst.graph().partners(i);
    const double p = heuristic::p_change(inst, i, spec);
    AgentPolicy ap{{partners.begin(), partners.end()}, 2, {}};
    const std::size_t states = space.config_count(partners);
    ap.rows.reserve(states * 2);
    for (std::size_t s = 0; s < states; ++s) {
      ap.rows.push_back(1.0 - p);
      ap.rows.push_back(p);
    }
    agents.push_back(std::move(ap));
  }
  return Policy(std::move(agents));
}

void Policy::validate(double tol) const {
  for (AgentId i = 0; i < agents_.size(); ++i) {
    const auto& ap = agents_[i];
    if (ap.actions < 2 || ap.rows.size() % static_cast<std::size_t>(ap.actions) != 0) {
      throw ValidationError("policy of agent " + std::to_string(i) + " is malformed");
    }
    if (ap.states() != (std::size_t{1} << ap.partners.size()) && ap.actions == 2) {
      throw ValidationError("policy of agent " + std::to_string(i) + " does not cover every partner configuration");
    }
    for (std::size_t s = 0; s < ap.states(); ++s) {
      double sum = 0.0;
      for (double v : ap.row(s)) {
        if (!(v >= 0.0 && v <= 1.0)) {
          throw ValidationError("policy entry outside [0, 1] for agent " + std::to_string(i));
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > tol) {
        throw ValidationError("policy row of agent " + std::to_string(i) + " sums to " + std::to_string(sum));
      }
    }
  }
}

QTable::QTable(const Policy& shape) {
  for (AgentId i = 0; i < shape.agents(); ++i) {
    const auto& ap = shape.agent(i);
    cells_.emplace_back(ap.rows.size());
    actions_.push_back(ap.actions);
  }
}

QCell& QTable::cell(AgentId i, std::size_t state, int action) {
  return cells_.at(i).at(state * static_cast<std::size_t>(actions_.at(i)) + static_cast<std::size_t>(action));
}

const QCell& QTable::cell(AgentId i, std::size_t state, int action) const {
  return cells_.at(i).at(state * static_cast<std::size_t>(actions_.at(i)) + static_cast<std::size_t>(action));
}

void QTable::credit(AgentId i, std::size_t state, int action, double reward) {
  auto& c = cell(i, state, action);
  ++c.count;
  c.mean += (reward - c.mean) / static_cast<double>(c.count);
}

void RlConfig::validate() const {
  // gamma = 0 and zero iterations are accepted: both leave the start policy
  // untouched, which the sanity checks rely on.
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("rl.gamma must lie in [0, 1]");
  if (plays_per_iteration < 1) throw ValidationError("rl.plays_per_iteration must be >= 1");
}

std::vector<double> marginal_action_prob(const Policy& policy, AgentId i) {
  const auto& ap = policy.agent(i);
  std::vector<double> m(static_cast<std::size_t>(ap.actions), 0.0);
  const std::size_t states = ap.states();
  for (std::size_t s = 0; s < states; ++s) {
    const auto row = ap.row(s);
    for (std::size_t a = 0; a < m.size(); ++a) m[a] += row[a];
  }
  for (double& v : m) v /= static_cast<double>(states);
  return m;
}

namespace {

int draw(std::span<const double> dist, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t a = 0; a + 1 < dist.size(); ++a) {
    acc += dist[a];
    if (u < acc) return static_cast<int>(a);
  }
  return static_cast<int>(dist.size()) - 1;
}

std::vector<std::vector<double>> payoff_tables(const game::GameInstance& inst) {
  const auto space = inst.space();
  std::vector<std::vector<double>> tables;
  for (AgentId i = 0; i < inst.agents(); ++i) {
    const auto hood = inst.graph().neighborhood(i);
    std::vector<double> t(space.config_count(hood));
    for (std::size_t c = 0; c < t.size(); ++c) t[c] = game::payoff(inst, i, space.local_config(hood, c));
    tables.push_back(std::move(t));
  }
  return tables;
}

std::vector<std::vector<double>> all_marginals(const Policy& policy) {
  std::vector<std::vector<double>> m;
  for (AgentId i = 0; i < policy.agents(); ++i) m.push_back(marginal_action_prob(policy, i));
  return m;
}

}  // namespace

IterationStats rl_iteration(const game::GameInstance& inst, Policy& policy, QTable& q,
                            const RlConfig& cfg, Rng& rng, const CreditObserver& observer) {
  cfg.validate();
  const std::size_t n = inst.agents();
  require(policy.agents() == n && q.agents() == n, "policy / Q do not match the game");
  const auto space = inst.space();
  const auto payoffs = payoff_tables(inst);
  const auto marg = all_marginals(policy);

  std::vector<std::vector<char>> visited(n);
  for (AgentId i = 0; i < n; ++i) visited[i].assign(policy.agent(i).states(), 0);

  IterationStats stats;
  double payoff_sum = 0.0;
  for (std::size_t play = 0; play < cfg.plays_per_iteration; ++play) {
    std::vector<Action> actions(n);
    for (AgentId i = 0; i < n; ++i) actions[i] = draw(marg[i], rng) + 1;
    const StrategyProfile s(std::move(actions));
    for (AgentId i = 0; i < n; ++i) {
      const double reward = payoffs[i][space.local_index(inst.graph().neighborhood(i), s)];
      const std::size_t state = space.local_index(policy.agent(i).partners, s);
      const int a = s[i] - 1;
      q.credit(i, state, a, reward);
      if (observer) observer(i, state, a, reward);
      visited[i][state] = 1;
      payoff_sum += reward;
    }
  }
  stats.mean_payoff = payoff_sum / static_cast<double>(cfg.plays_per_iteration * n);

  for (AgentId i = 0; i < n; ++i) {
    auto& ap = policy.agent(i);
    for (std::size_t state = 0; state < ap.states(); ++state) {
      if (!visited[i][state]) continue;
      auto row = ap.row(state);
      // Greedy over visited cells; ties go to the currently most probable
      // action, then to the lower index.
      int best = -1;
      for (int a = 0; a < ap.actions; ++a) {
        const auto& c = q.cell(i, state, a);
        if (c.count == 0) continue;
        if (best < 0) {
          best = a;
          continue;
        }
        const auto& b = q.cell(i, state, best);
        if (c.mean > b.mean || (c.mean == b.mean && row[static_cast<std::size_t>(a)] > row[static_cast<std::size_t>(best)])) {
          best = a;
        }
      }
      bool changed = false;
      for (int a = 0; a < ap.actions; ++a) {
        const double target = a == best ? 1.0 : 0.0;
        auto& v = row[static_cast<std::size_t>(a)];
        const double nv = v * (1.0 - cfg.gamma) + target * cfg.gamma;
        changed = changed || nv != v;
        v = nv;
      }
      if (changed) ++stats.rows_changed;
    }
  }
  return stats;
}

RlResult run_rl(const game::GameInstance& inst, const heuristic::HeuristicSpec& spec,
                const RlConfig& cfg, const CreditObserver& observer) {
  cfg.validate();
  RlResult r{Policy::heuristic(inst, spec), {}, {}};
  r.q = QTable(r.policy);
  Rng rng(cfg.seed);
  r.history.reserve(cfg.iterations);
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    r.history.push_back(rl_iteration(inst, r.policy, r.q, cfg, rng, observer));
  }
  return r;
}

PlayDataset sample_sim_data(const game::GameInstance& inst, const Policy& policy,
                            std::size_t count, std::uint64_t seed) {
  require(count >= 1, "sample count must be positive");
  require(policy.agents() == inst.agents(), "policy does not match the game");
  const auto marg = all_marginals(policy);
  Rng rng(seed);
  PlayDataset out(inst.agents());
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Action> a(inst.agents());
    for (AgentId i = 0; i < a.size(); ++i) a[i] = draw(marg[i], rng) + 1;
    out.push_back(StrategyProfile(std::move(a)));
  }
  return out;
}

json policy_to_json(const Policy& policy) {
  json agents = json::array();
  for (AgentId i = 0; i < policy.agents(); ++i) {
    const auto& ap = policy.agent(i);
    json rows = json::array();
    for (std::size_t s = 0; s < ap.states(); ++s) {
      std::vector<int> cfg;
      std::size_t rest = s;
      for (std::size_t k = 0; k < ap.partners.size(); ++k) {
        cfg.push_back(static_cast<int>(rest % 2) + 1);
        rest /= 2;
      }
      const auto r = ap.row(s);
      rows.push_back({{"partner_actions", cfg}, {"probs", std::vector<double>(r.begin(), r.end())}});
    }
    agents.push_back({{"agent", i}, {"partners", ap.partners}, {"rows", rows}});
  }
  return {{"agents", agents}};
}

Policy policy_from_json(const json& j) {
  std::vector<AgentPolicy> agents;
  try {
    for (const auto& a : j.at("agents")) {
      AgentPolicy ap;
      ap.partners = a.at("partners").get<std::vector<AgentId>>();
      ap.actions = 2;
      for (const auto& row : a.at("rows")) {
        const auto probs = row.at("probs").get<std::vector<double>>();
        if (probs.size() != 2) throw ValidationError("policy rows must have two entries");
        ap.rows.insert(ap.rows.end(), probs.begin(), probs.end());
      }
      agents.push_back(std::move(ap));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("policy file: ") + e.what());
  }
  Policy p(std::move(agents));
  p.validate();
  return p;
}

}  // namespace gmm::rl
