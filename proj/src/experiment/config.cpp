#include "gmm/experiment/config.hpp"

#include <fstream>
#include <set>

#include "gmm/util/error.hpp"

namespace gmm::experiment {

using nlohmann::json;

std::string to_string(Suite s) {
  switch (s) {
    case Suite::baseline: return "baseline";
    case Suite::simg: return "simg";
    case Suite::rho: return "rho";
    case Suite::delta: return "delta";
    case Suite::cross: return "cross";
  }
  return "?";
}

Suite parse_suite(const std::string& name) {
  for (auto s : {Suite::baseline, Suite::simg, Suite::rho, Suite::delta, Suite::cross}) {
    if (to_string(s) == name) return s;
  }
  throw ValidationError("unknown suite '" + name + "' (baseline|simg|rho|delta|cross)");
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ValidationError(where + "." + it.key() + ": unknown key");
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (fixture.empty()) throw ValidationError("config.fixture: required");
  if (trials < 1) throw ValidationError("config.trials: must be >= 1");
  if (train_size < 1) throw ValidationError("config.train_size: must be >= 1");
  if (test_size < 1) throw ValidationError("config.test_size: must be >= 1");
  if (!(temperature_min > 0.0 && temperature_max >= temperature_min)) {
    throw ValidationError("config.temperature_range: need 0 < min <= max");
  }
  fit.validate();
  if (!(pool_learning_rate > 0.0)) throw ValidationError("config.fit.pool_learning_rate: must be > 0");
  rl.validate();
  for (std::size_t k = 0; k < rho.size(); ++k) {
    if (!(rho[k] > 0.0 && rho[k] <= 1.0)) {
      throw ValidationError("config.rho[" + std::to_string(k) + "]: must lie in (0, 1]");
    }
  }
  for (std::size_t k = 0; k < delta.size(); ++k) {
    if (!(delta[k] >= 0.0)) throw ValidationError("config.delta[" + std::to_string(k) + "]: must be >= 0");
  }
}

json heuristic_to_json(const heuristic::HeuristicSpec& spec) {
  if (spec.mode == heuristic::HeuristicSpec::Mode::pchange) return {{"mode", "pchange"}};
  return {{"mode", "constant"}, {"p", spec.p}};
}

heuristic::HeuristicSpec heuristic_from_json(const json& j, const std::string& where) {
  reject_unknown(j, {"mode", "p"}, where);
  std::string mode;
  read(j, "mode", mode, where);
  if (mode == "pchange") {
    if (j.contains("p")) throw ValidationError(where + ".p: only valid with mode \"constant\"");
    return heuristic::HeuristicSpec::pchange();
  }
  if (mode == "constant") {
    if (!j.contains("p")) throw ValidationError(where + ".p: required for mode \"constant\"");
    double p = 0.0;
    read(j, "p", p, where);
    try {
      return heuristic::HeuristicSpec::constant(p);
    } catch (const ValidationError&) {
      throw ValidationError(where + ".p: must lie in (0, 1)");
    }
  }
  throw ValidationError(where + ".mode: expected \"pchange\" or \"constant\"");
}

ExperimentConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  const std::string w = "config";
  reject_unknown(j, {"fixture", "trials", "train_size", "test_size", "master_seed", "suite",
                     "game_coefficients", "heuristic", "cross_heuristic", "temperature_range", "fit",
                     "rl", "rho", "delta", "threads"},
                 w);
  ExperimentConfig cfg;
  std::string fixture;
  read(j, "fixture", fixture, w);
  if (!fixture.empty()) {
    std::filesystem::path p(fixture);
    cfg.fixture = p.is_absolute() || base_dir.empty() ? p : (base_dir / p).lexically_normal();
  }
  read(j, "trials", cfg.trials, w);
  read(j, "train_size", cfg.train_size, w);
  read(j, "test_size", cfg.test_size, w);
  read(j, "master_seed", cfg.master_seed, w);
  if (j.contains("suite")) {
    std::string s;
    read(j, "suite", s, w);
    cfg.suite = parse_suite(s);
  }
  if (j.contains("game_coefficients")) {
    std::string s;
    read(j, "game_coefficients", s, w);
    if (s == "fixture") cfg.coefficients = CoefficientSource::fixture;
    else if (s == "per_trial") cfg.coefficients = CoefficientSource::per_trial;
    else throw ValidationError(w + ".game_coefficients: expected \"fixture\" or \"per_trial\"");
  }
  if (j.contains("heuristic")) cfg.heuristic = heuristic_from_json(j.at("heuristic"), w + ".heuristic");
  if (j.contains("cross_heuristic")) {
    cfg.cross_heuristic = heuristic_from_json(j.at("cross_heuristic"), w + ".cross_heuristic");
  }
  if (j.contains("temperature_range")) {
    std::vector<double> range;
    read(j, "temperature_range", range, w);
    if (range.size() != 2) throw ValidationError(w + ".temperature_range: expected [min, max]");
    cfg.temperature_min = range[0];
    cfg.temperature_max = range[1];
  }
  if (j.contains("fit")) {
    const auto& f = j.at("fit");
    const std::string fw = w + ".fit";
    reject_unknown(f, {"learning_rate", "gradient_tolerance", "max_iterations", "lambda_floor", "pool_learning_rate"}, fw);
    read(f, "learning_rate", cfg.fit.learning_rate, fw);
    read(f, "gradient_tolerance", cfg.fit.gradient_tolerance, fw);
    read(f, "max_iterations", cfg.fit.max_iterations, fw);
    read(f, "lambda_floor", cfg.fit.lambda_floor, fw);
    read(f, "pool_learning_rate", cfg.pool_learning_rate, fw);
  }
  if (j.contains("rl")) {
    const auto& r = j.at("rl");
    const std::string rw = w + ".rl";
    reject_unknown(r, {"gamma", "iterations", "plays_per_iteration"}, rw);
    read(r, "gamma", cfg.rl.gamma, rw);
    read(r, "iterations", cfg.rl.iterations, rw);
    read(r, "plays_per_iteration", cfg.rl.plays_per_iteration, rw);
  }
  read(j, "rho", cfg.rho, w);
  read(j, "delta", cfg.delta, w);
  read(j, "threads", cfg.threads, w);
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  return {
      {"fixture", cfg.fixture.string()},
      {"trials", cfg.trials},
      {"train_size", cfg.train_size},
      {"test_size", cfg.test_size},
      {"master_seed", cfg.master_seed},
      {"suite", to_string(cfg.suite)},
      {"game_coefficients", cfg.coefficients == CoefficientSource::fixture ? "fixture" : "per_trial"},
      {"heuristic", heuristic_to_json(cfg.heuristic)},
      {"cross_heuristic", heuristic_to_json(cfg.cross_heuristic)},
      {"temperature_range", {cfg.temperature_min, cfg.temperature_max}},
      {"fit",
       {{"learning_rate", cfg.fit.learning_rate},
        {"gradient_tolerance", cfg.fit.gradient_tolerance},
        {"max_iterations", cfg.fit.max_iterations},
        {"lambda_floor", cfg.fit.lambda_floor},
        {"pool_learning_rate", cfg.pool_learning_rate}}},
      {"rl",
       {{"gamma", cfg.rl.gamma},
        {"iterations", cfg.rl.iterations},
        {"plays_per_iteration", cfg.rl.plays_per_iteration}}},
      {"rho", cfg.rho},
      {"delta", cfg.delta},
      {"threads", cfg.threads},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

}  // namespace gmm::experiment
