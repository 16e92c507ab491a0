#include "gmm/experiment/suites.hpp"

#include <exception>

#include "gmm/util/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gmm::experiment {

namespace {

using TrialFn = TrialResult (*)(const ExperimentConfig&, const game::GameFixture&, std::size_t);

TrialFn trial_fn(Suite s) {
  switch (s) {
    case Suite::baseline: return &run_trial;
    case Suite::simg: return &run_simg_trial;
    case Suite::rho: return &run_rho_trial;
    case Suite::delta: return &run_delta_trial;
    case Suite::cross: return &run_cross_trial;
  }
  throw PreconditionError("unknown suite");
}

}  // namespace

SuiteResult run_suite(const ExperimentConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw StageError("config", e.what());
  }
  const auto fixture = [&] {
    try {
      return game::load_fixture(cfg.fixture);
    } catch (const std::exception& e) {
      throw StageError("fixture", e.what());
    }
  }();
  const TrialFn fn = trial_fn(cfg.suite);

  SuiteResult out{cfg, std::vector<TrialResult>(cfg.trials)};
  std::vector<std::exception_ptr> errors(cfg.trials);
  const auto count = static_cast<long long>(cfg.trials);

#ifdef _OPENMP
  const int threads = cfg.threads > 0 ? static_cast<int>(cfg.threads) : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (long long t = 0; t < count; ++t) {
    const auto idx = static_cast<std::size_t>(t);
    try {
      out.trials[idx] = fn(cfg, fixture, idx);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

SuiteResult run_baseline(ExperimentConfig cfg) {
  cfg.suite = Suite::baseline;
  return run_suite(cfg);
}

SuiteResult run_simg_comparison(ExperimentConfig cfg) {
  cfg.suite = Suite::simg;
  return run_suite(cfg);
}

SuiteResult sweep_availability(ExperimentConfig cfg, std::vector<double> rho) {
  cfg.suite = Suite::rho;
  cfg.rho = std::move(rho);
  return run_suite(cfg);
}

SuiteResult sweep_inaccuracy(ExperimentConfig cfg, std::vector<double> delta) {
  cfg.suite = Suite::delta;
  cfg.delta = std::move(delta);
  return run_suite(cfg);
}

SuiteResult cross_input_experiment(ExperimentConfig cfg) {
  cfg.suite = Suite::cross;
  return run_suite(cfg);
}

}  // namespace gmm::experiment
