// Command-line front end: simulate, fit, combine, evaluate, experiment.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmm/combine/methods.hpp"
#include "gmm/combine/model_io.hpp"
#include "gmm/core/inference.hpp"
#include "gmm/experiment/results.hpp"
#include "gmm/experiment/suites.hpp"
#include "gmm/experiment/trial.hpp"
#include "gmm/util/error.hpp"
#include "gmm/util/rng.hpp"

namespace fs = std::filesystem;
namespace ex = gmm::experiment;
namespace cb = gmm::combine;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
};

void add_common(CLI::App* cmd, Common& c, bool needs_config) {
  auto* opt = cmd->add_option("--config", c.config, "experiment config (JSON)");
  if (needs_config) opt->required();
  cmd->add_option("--seed", c.seed, "master seed (overrides the config)");
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
}

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const gmm::StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw gmm::StageError(name, e.what());
  }
}

ex::ExperimentConfig load(const Common& c) {
  auto cfg = stage("config", [&] { return ex::load_config(c.config); });
  if (c.seed) cfg.master_seed = *c.seed;
  return cfg;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream f(path);
  if (!f) throw gmm::Error("cannot open " + path.string() + " for writing");
  f << j.dump(2) << '\n';
}

gmm::Gmm load_gmm(const std::string& path) {
  auto m = cb::load_model(path);
  if (!std::holds_alternative<gmm::Gmm>(m)) throw gmm::ValidationError(path + ": expected a GMM, not a pool");
  return std::get<gmm::Gmm>(std::move(m));
}

void print_fit(const char* what, const cb::FitResult& r) {
  std::cout << what << ": iterations=" << r.iterations << " converged=" << (r.converged ? "yes" : "no")
            << " mean_loglik=" << ex::format_double(r.trace.empty() ? 0.0 : r.trace.back()) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graphical multiagent models: build, fit, combine and evaluate"};
  app.require_subcommand(1);

  Common sim_c;
  std::size_t sim_trial = 0;
  auto* sim = app.add_subcommand("simulate", "build the fixture game, D from the heuristic and D* from the RL simulation");
  add_common(sim, sim_c, true);
  sim->add_option("--trial", sim_trial, "trial index for seed derivation")->capture_default_str();

  Common fit_c;
  std::string fit_model, fit_data;
  auto* fit = app.add_subcommand("fit", "maximum-likelihood fit of a regret GMM's lambda to a dataset");
  add_common(fit, fit_c, false);
  fit->add_option("--model", fit_model, "regret-form model giving the tables (and the start unless --unit)")->required();
  fit->add_option("--data", fit_data, "dataset CSV")->required();
  bool fit_unit = false;
  fit->add_flag("--unit", fit_unit, "start from lambda = 1");

  Common comb_c;
  std::string comb_method, comb_model, comb_family, comb_data;
  auto* comb = app.add_subcommand("combine", "combine a regret GMM with play data");
  add_common(comb, comb_c, false);
  comb->add_option("--method", comb_method, "direct | pool | mix")
      ->required()
      ->check(CLI::IsMember({"direct", "pool", "mix"}));
  comb->add_option("--model", comb_model, "input model G1 (regret form)")->required();
  comb->add_option("--family", comb_family, "regret model whose tables parameterize fitted models (default: --model)");
  comb->add_option("--data", comb_data, "dataset CSV")->required();

  std::string ev_model, ev_base, ev_data;
  auto* ev = app.add_subcommand("evaluate", "log score of a model on a dataset, optionally the ratio against a baseline");
  ev->add_option("--model", ev_model, "model JSON")->required();
  ev->add_option("--baseline", ev_base, "baseline model JSON");
  ev->add_option("--data", ev_data, "dataset CSV")->required();

  Common exp_c;
  std::string exp_suite;
  std::optional<std::size_t> exp_trials, exp_threads;
  auto* exp = app.add_subcommand("experiment", "run a trial suite and write trials.csv, summary.csv, manifest.json");
  add_common(exp, exp_c, true);
  exp->add_option("--suite", exp_suite, "baseline | simg | rho | delta | cross")
      ->check(CLI::IsMember({"baseline", "simg", "rho", "delta", "cross"}));
  exp->add_option("--trials", exp_trials, "number of trials (overrides the config)");
  exp->add_option("--threads", exp_threads, "trial-level worker threads (overrides the config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const auto cfg = load(sim_c);
      const auto fixture = stage("fixture", [&] { return gmm::game::load_fixture(cfg.fixture); });
      ex::TrialResult log;
      const auto in = ex::prepare_trial(cfg, fixture, sim_trial, cfg.heuristic, {}, &log);
      const fs::path out(sim_c.out);
      stage("output", [&] {
        fs::create_directories(out);
        write_json(out / "game.json", gmm::game::instance_to_json(in.game, fixture.description));
        cb::save_model(out / "reg.json", in.reg);
        cb::save_model(out / "hg.json", in.hg, true);
        write_json(out / "policy.json", gmm::rl::policy_to_json(in.sim.policy));
        gmm::write_dataset_csv(out / "D.csv", in.train);
        gmm::write_dataset_csv(out / "Dstar.csv", in.test);
        nlohmann::json seeds = nlohmann::json::object();
        for (const auto& [tag, s] : log.seeds) seeds[tag] = s;
        write_json(out / "seeds.json", seeds);
        return 0;
      });
      std::cout << "wrote game.json reg.json hg.json policy.json D.csv Dstar.csv seeds.json to " << out.string() << '\n';
    } else if (*fit) {
      const auto cfg = fit_c.config.empty() ? ex::ExperimentConfig{} : load(fit_c);
      const auto model = stage("input", [&] { return load_gmm(fit_model); });
      const auto data = stage("input", [&] { return gmm::read_dataset_csv(fs::path(fit_data)); });
      const auto r = stage("fit", [&] {
        return cb::fit_regret_gmm_ml(fit_unit ? cb::unit_lambda(model) : model, data, cfg.fit);
      });
      print_fit("fit", r);
      stage("output", [&] {
        fs::create_directories(fit_c.out);
        cb::save_model(fs::path(fit_c.out) / "fitted.json", r.model);
        return 0;
      });
    } else if (*comb) {
      const auto cfg = comb_c.config.empty() ? ex::ExperimentConfig{} : load(comb_c);
      const std::uint64_t seed = comb_c.seed.value_or(cfg.master_seed);
      const auto g1 = stage("input", [&] { return load_gmm(comb_model); });
      const auto family = comb_family.empty() ? g1 : stage("input", [&] { return load_gmm(comb_family); });
      const auto data = stage("input", [&] { return gmm::read_dataset_csv(fs::path(comb_data)); });
      cb::AnyModel result = g1;
      if (comb_method == "direct") {
        const auto r = stage("direct", [&] { return cb::direct_update(g1, data, cfg.fit); });
        print_fit("direct", r);
        result = r.model;
      } else if (comb_method == "pool") {
        const auto r = stage("pool", [&] {
          return cb::opinion_pool(g1, family, data, cfg.fit, cfg.pool_learning_rate);
        });
        print_fit("g2", r.g2_fit);
        std::cout << "pool weight=" << ex::format_double(r.weight_fit.weight) << '\n';
        result = r.pool;
      } else {
        const auto r = stage("mix", [&] {
          return cb::mixing_data(g1, family, data, cfg.fit, gmm::derive_seed(seed, 0, "mix"));
        });
        print_fit("mix", r.fit);
        result = r.fit.model;
      }
      stage("output", [&] {
        fs::create_directories(comb_c.out);
        cb::save_model(fs::path(comb_c.out) / (comb_method + ".json"), result);
        return 0;
      });
    } else if (*ev) {
      const auto model = stage("input", [&] { return cb::load_model(ev_model); });
      const auto data = stage("input", [&] { return gmm::read_dataset_csv(fs::path(ev_data)); });
      const double score = stage("score", [&] { return cb::log_score(model, data); });
      std::cout << "score=" << ex::format_double(score) << '\n';
      if (!ev_base.empty()) {
        const auto base = stage("input", [&] { return cb::load_model(ev_base); });
        const double base_score = stage("score", [&] { return cb::log_score(base, data); });
        std::cout << "baseline_score=" << ex::format_double(base_score) << '\n';
        std::cout << "R=" << ex::format_double(stage("score", [&] { return cb::score_ratio(base_score, score); }))
                  << '\n';
      }
    } else if (*exp) {
      auto cfg = load(exp_c);
      if (!exp_suite.empty()) cfg.suite = ex::parse_suite(exp_suite);
      if (exp_trials) cfg.trials = *exp_trials;
      if (exp_threads) cfg.threads = *exp_threads;
      const auto result = ex::run_suite(cfg);
      ex::emit_results(result, exp_c.out);
      for (const auto& t : result.trials) {
        for (const auto& f : t.failures) std::cerr << "trial " << t.trial << ": " << f << '\n';
      }
      std::cout << "suite " << ex::to_string(cfg.suite) << ": " << result.trials.size() << " trials written to "
                << exp_c.out << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
