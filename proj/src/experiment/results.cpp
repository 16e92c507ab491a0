#include "gmm/experiment/results.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <tuple>

#include "gmm/kernels/enumerate.hpp"
#include "gmm/util/error.hpp"

namespace gmm::experiment {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<SummaryRow> summarize(const SuiteResult& result) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::size_t> slot;
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> ratios;
  for (const auto& trial : result.trials) {
    for (const auto& r : trial.rows) {
      const Key key{r.setting, r.method, r.baseline};
      auto it = slot.find(key);
      if (it == slot.end()) {
        it = slot.emplace(key, rows.size()).first;
        rows.push_back({r.setting, r.method, r.baseline});
        ratios.emplace_back();
      }
      auto& s = rows[it->second];
      ++s.count;
      s.mean_score_base += r.score_base;
      s.mean_score_combined += r.score_combined;
      ratios[it->second].push_back(r.ratio);
    }
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto& s = rows[k];
    const auto n = static_cast<double>(s.count);
    s.mean_score_base /= n;
    s.mean_score_combined /= n;
    double sum = 0.0;
    for (double r : ratios[k]) sum += r;
    s.mean_ratio = sum / n;
    if (s.count > 1) {
      double ss = 0.0;
      for (double r : ratios[k]) ss += (r - s.mean_ratio) * (r - s.mean_ratio);
      s.std_ratio = std::sqrt(ss / (n - 1.0));
    }
  }
  return rows;
}

const SummaryRow& find_summary(const std::vector<SummaryRow>& rows, std::string_view setting,
                               std::string_view method, std::string_view baseline) {
  for (const auto& r : rows) {
    if (r.setting == setting && r.method == method && r.baseline == baseline) return r;
  }
  throw PreconditionError("no summary row for " + std::string(setting) + "/" + std::string(method) +
                          " vs " + std::string(baseline));
}

void write_trials_csv(std::ostream& out, const SuiteResult& result) {
  out << "trial,setting,method,baseline,score_base,score_combined,R\n";
  for (const auto& t : result.trials) {
    for (const auto& r : t.rows) {
      out << t.trial << ',' << r.setting << ',' << r.method << ',' << r.baseline << ','
          << format_double(r.score_base) << ',' << format_double(r.score_combined) << ','
          << format_double(r.ratio) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "setting,method,baseline,trials,mean_R,std_R,mean_score_base,mean_score_combined\n";
  for (const auto& r : rows) {
    out << r.setting << ',' << r.method << ',' << r.baseline << ',' << r.count << ','
        << format_double(r.mean_ratio) << ',' << format_double(r.std_ratio) << ','
        << format_double(r.mean_score_base) << ',' << format_double(r.mean_score_combined) << '\n';
  }
}

nlohmann::json manifest(const SuiteResult& result) {
  nlohmann::json trials = nlohmann::json::array();
  double total = 0.0;
  for (const auto& t : result.trials) {
    nlohmann::json seeds = nlohmann::json::object();
    for (const auto& [tag, seed] : t.seeds) seeds[tag] = seed;
    trials.push_back({{"trial", t.trial}, {"seeds", seeds}, {"failures", t.failures},
                      {"wall_seconds", t.wall_seconds}});
    total += t.wall_seconds;
  }
  return {{"config", config_to_json(result.config)},
          {"trials", trials},
          {"trial_seconds_total", total},
          {"kernel_threads", kernels::max_threads()}};
}

void emit_results(const SuiteResult& result, const std::filesystem::path& out_dir) {
  try {
    std::filesystem::create_directories(out_dir);
    auto open = [&](const char* name) {
      std::ofstream f(out_dir / name, std::ios::binary);
      if (!f) throw Error("cannot open " + (out_dir / name).string() + " for writing");
      return f;
    };
    {
      auto f = open("trials.csv");
      write_trials_csv(f, result);
    }
    {
      auto f = open("summary.csv");
      write_summary_csv(f, summarize(result));
    }
    {
      auto f = open("manifest.json");
      f << manifest(result).dump(2) << '\n';
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("output", e.what());
  }
}

}  // namespace gmm::experiment
