#include "gmm/experiment/trial.hpp"

#include <chrono>
#include <cmath>

#include "gmm/core/inference.hpp"
#include "gmm/game/regret_model.hpp"
#include "gmm/heuristic/heuristic.hpp"
#include "gmm/util/error.hpp"
#include "gmm/util/rng.hpp"

namespace gmm::experiment {

namespace {

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

class SeedBook {
 public:
  SeedBook(const ExperimentConfig& cfg, std::size_t trial, TrialResult* log)
      : master_(cfg.master_seed), trial_(trial), log_(log) {}

  std::uint64_t operator()(const std::string& tag) {
    const auto s = derive_seed(master_, trial_, tag);
    if (log_) {
      bool seen = false;
      for (const auto& [k, v] : log_->seeds) seen = seen || k == tag;
      if (!seen) log_->seeds.emplace_back(tag, s);
    }
    return s;
  }

 private:
  std::uint64_t master_;
  std::size_t trial_;
  TrialResult* log_;
};

struct Named {
  std::string name;
  double score;
};

void add_rows(TrialResult& r, const std::string& setting, const std::vector<Named>& methods,
              const std::vector<Named>& baselines) {
  for (const auto& m : methods) r.scores.emplace_back(setting + ":" + m.name, m.score);
  for (const auto& b : baselines) {
    bool listed = false;
    for (const auto& m : methods) listed = listed || m.name == b.name;
    if (!listed) r.scores.emplace_back(setting + ":" + b.name, b.score);
  }
  for (const auto& m : methods) {
    for (const auto& b : baselines) {
      if (m.name == b.name) continue;
      r.rows.push_back({setting, m.name, b.name, b.score, m.score, combine::score_ratio(b.score, m.score)});
    }
  }
}

std::vector<Named> score_combined(const CombinedModels& c, const PlayDataset& test) {
  return stage("score", [&] {
    return std::vector<Named>{{"directG", log_score(c.direct.model, test)},
                              {"OPG", combine::log_score(c.pool.pool, test)},
                              {"mixG", log_score(c.mix.fit.model, test)}};
  });
}

std::string label(const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%g", key, v);
  return buf;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

double TrialResult::score(std::string_view key) const {
  for (const auto& [k, v] : scores) {
    if (k == key) return v;
  }
  throw PreconditionError("no score recorded for '" + std::string(key) + "'");
}

std::string rho_setting(double rho) { return label("rho", rho); }
std::string delta_setting(double delta) { return label("delta", delta); }

TrialInputs prepare_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture,
                          std::size_t trial, const heuristic::HeuristicSpec& spec,
                          std::string_view stream, TrialResult* log) {
  SeedBook seed(cfg, trial, log);
  const std::string prefix(stream);
  TrialInputs in;
  in.game = stage("game", [&] {
    return cfg.coefficients == CoefficientSource::per_trial ? fixture.instantiate(seed("game"))
                                                            : fixture.instantiate();
  });
  in.family = stage("regret", [&] { return game::build_regret_gmm(in.game, 1.0); });
  in.reg = stage("temperatures", [&] {
    Rng rng(seed("temperatures"));
    const auto t = game::Temperatures::sample(in.game.agents(), cfg.temperature_min, cfg.temperature_max, rng);
    return in.family.with_lambda(t.lambda());
  });
  in.hg = stage("heuristic", [&] { return heuristic::build_heuristic_gmm(in.game, spec); });
  in.train = stage("train", [&] {
    return heuristic::sample_heuristic(in.game, spec, cfg.train_size, seed(prefix + "train"));
  });
  in.sim = stage("rl", [&] {
    auto rl_cfg = cfg.rl;
    rl_cfg.seed = seed(prefix + "rl");
    return rl::run_rl(in.game, spec, rl_cfg);
  });
  in.test = stage("test", [&] {
    return rl::sample_sim_data(in.game, in.sim.policy, cfg.test_size, seed(prefix + "test"));
  });
  return in;
}

CombinedModels combine_sources(const Gmm& g1, const Gmm& family, const PlayDataset& data,
                               const ExperimentConfig& cfg, std::uint64_t mix_seed) {
  CombinedModels c{
      stage("direct", [&] { return combine::direct_update(g1, data, cfg.fit); }),
      stage("pool", [&] { return combine::opinion_pool(g1, family, data, cfg.fit, cfg.pool_learning_rate); }),
      stage("mix", [&] { return combine::mixing_data(g1, family, data, cfg.fit, mix_seed); }),
  };
  return c;
}

combine::FitResult fit_simg(const ExperimentConfig& cfg, const TrialInputs& in, std::size_t trial,
                            TrialResult* log) {
  SeedBook seed(cfg, trial, log);
  return stage("simg", [&] {
    const auto data = rl::sample_sim_data(in.game, in.sim.policy, cfg.train_size, seed("simg_data"));
    return combine::fit_regret_gmm_ml(combine::unit_lambda(in.family), data, cfg.fit);
  });
}

TrialResult run_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture, std::size_t trial) {
  Timer timer;
  TrialResult r;
  r.trial = trial;
  SeedBook seed(cfg, trial, &r);
  const auto in = prepare_trial(cfg, fixture, trial, cfg.heuristic, {}, &r);
  const auto c = combine_sources(in.reg, in.family, in.train, cfg, seed("mix"));
  const std::vector<Named> baselines = stage("score", [&] {
    return std::vector<Named>{{"reG", log_score(in.reg, in.test)}, {"hG", log_score(in.hg, in.test)}};
  });
  add_rows(r, "baseline", score_combined(c, in.test), baselines);
  r.wall_seconds = timer.seconds();
  return r;
}

TrialResult run_simg_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture, std::size_t trial) {
  Timer timer;
  TrialResult r;
  r.trial = trial;
  SeedBook seed(cfg, trial, &r);
  const auto in = prepare_trial(cfg, fixture, trial, cfg.heuristic, {}, &r);
  const auto simg = fit_simg(cfg, in, trial, &r);
  const auto c = combine_sources(in.reg, in.family, in.train, cfg, seed("mix"));
  auto methods = score_combined(c, in.test);
  stage("score", [&] {
    methods.push_back({"reG", log_score(in.reg, in.test)});
    methods.push_back({"hG", log_score(in.hg, in.test)});
    return 0;
  });
  const double simg_score = stage("score", [&] { return log_score(simg.model, in.test); });
  add_rows(r, "simg", methods, {{"simG", simg_score}});
  r.wall_seconds = timer.seconds();
  return r;
}

TrialResult run_rho_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture, std::size_t trial) {
  Timer timer;
  TrialResult r;
  r.trial = trial;
  SeedBook seed(cfg, trial, &r);
  const auto in = prepare_trial(cfg, fixture, trial, cfg.heuristic, {}, &r);
  const std::vector<Named> baselines = stage("score", [&] {
    return std::vector<Named>{{"reG", log_score(in.reg, in.test)}, {"hG", log_score(in.hg, in.test)}};
  });
  const auto mix_seed = seed("mix");
  for (double rho : cfg.rho) {
    const auto keep = static_cast<std::size_t>(std::ceil(rho * static_cast<double>(in.train.size()) - 1e-9));
    if (keep < 2) {
      r.failures.push_back(rho_setting(rho) + ": fewer than 2 training profiles");
      continue;
    }
    const auto c = combine_sources(in.reg, in.family, in.train.head(keep), cfg, mix_seed);
    add_rows(r, rho_setting(rho), score_combined(c, in.test), baselines);
  }
  r.wall_seconds = timer.seconds();
  return r;
}

TrialResult run_delta_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture, std::size_t trial) {
  Timer timer;
  TrialResult r;
  r.trial = trial;
  SeedBook seed(cfg, trial, &r);
  const auto in = prepare_trial(cfg, fixture, trial, cfg.heuristic, {}, &r);
  const auto simg = fit_simg(cfg, in, trial, &r);
  const double hg_score = stage("score", [&] { return log_score(in.hg, in.test); });
  const auto mix_seed = seed("mix");
  for (double delta : cfg.delta) {
    std::vector<double> lambda(simg.model.lambda().begin(), simg.model.lambda().end());
    for (double& l : lambda) l *= 1.0 + delta;
    const auto reg = in.family.with_lambda(std::move(lambda));
    const auto c = combine_sources(reg, in.family, in.train, cfg, mix_seed);
    const double reg_score = stage("score", [&] { return log_score(reg, in.test); });
    add_rows(r, delta_setting(delta), score_combined(c, in.test), {{"reG", reg_score}, {"hG", hg_score}});
  }
  r.wall_seconds = timer.seconds();
  return r;
}

TrialResult run_cross_trial(const ExperimentConfig& cfg, const game::GameFixture& fixture, std::size_t trial) {
  Timer timer;
  TrialResult r;
  r.trial = trial;
  SeedBook seed(cfg, trial, &r);
  const auto in_d = prepare_trial(cfg, fixture, trial, cfg.heuristic, {}, &r);
  const auto in_e = prepare_trial(cfg, fixture, trial, cfg.cross_heuristic, "cross_", &r);
  const auto comb_d = combine_sources(in_d.reg, in_d.family, in_d.train, cfg, seed("mix"));
  const auto comb_e = combine_sources(in_d.reg, in_d.family, in_e.train, cfg, seed("cross_mix"));

  struct Test {
    const char* name;
    const PlayDataset* data;
  };
  for (const Test t : {Test{"D*", &in_d.test}, Test{"E*", &in_e.test}}) {
    const double reg_score = stage("score", [&] { return log_score(in_d.reg, *t.data); });
    add_rows(r, std::string("in=D/test=") + t.name, score_combined(comb_d, *t.data), {{"reG", reg_score}});
    add_rows(r, std::string("in=E/test=") + t.name, score_combined(comb_e, *t.data), {{"reG", reg_score}});
    const Named hg_d{"hG_D", stage("score", [&] { return log_score(in_d.hg, *t.data); })};
    const Named hg_e{"hG_E", stage("score", [&] { return log_score(in_e.hg, *t.data); })};
    const bool d_side = t.data == &in_d.test;
    add_rows(r, std::string("test=") + t.name, {d_side ? hg_d : hg_e}, {d_side ? hg_e : hg_d});
  }
  r.wall_seconds = timer.seconds();
  return r;
}

}  // namespace gmm::experiment
