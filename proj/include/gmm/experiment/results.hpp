#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gmm/experiment/suites.hpp"

namespace gmm::experiment {

struct SummaryRow {
  std::string setting;
  std::string method;
  std::string baseline;
  std::size_t count = 0;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;  // sample standard deviation (0 for a single trial)
  double mean_score_base = 0.0;
  double mean_score_combined = 0.0;
};

/// Groups rows by (setting, method, baseline) in first-seen order.
std::vector<SummaryRow> summarize(const SuiteResult& result);
const SummaryRow& find_summary(const std::vector<SummaryRow>& rows, std::string_view setting,
                               std::string_view method, std::string_view baseline);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// trial,setting,method,baseline,score_base,score_combined,R
void write_trials_csv(std::ostream& out, const SuiteResult& result);
/// setting,method,baseline,trials,mean_R,std_R,mean_score_base,mean_score_combined
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
nlohmann::json manifest(const SuiteResult& result);

/// Writes trials.csv, summary.csv and manifest.json into out_dir.
void emit_results(const SuiteResult& result, const std::filesystem::path& out_dir);

}  // namespace gmm::experiment
