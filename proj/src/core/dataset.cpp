#include "gmm/core/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gmm/util/error.hpp"

namespace gmm {

PlayDataset::PlayDataset(std::size_t n, std::vector<StrategyProfile> profiles) : n_(n) {
  profiles_.reserve(profiles.size());
  for (auto& s : profiles) push_back(std::move(s));
}

void PlayDataset::push_back(StrategyProfile s) {
  if (s.size() != n_) {
    throw PreconditionError("profile has " + std::to_string(s.size()) + " actions, dataset expects " +
                            std::to_string(n_));
  }
  profiles_.push_back(std::move(s));
}

PlayDataset PlayDataset::head(std::size_t count) const {
  return slice(0, std::min(count, profiles_.size()));
}

PlayDataset PlayDataset::slice(std::size_t first, std::size_t last) const {
  require(first <= last && last <= profiles_.size(), "dataset slice out of range");
  PlayDataset out(n_);
  out.profiles_.assign(profiles_.begin() + static_cast<std::ptrdiff_t>(first),
                       profiles_.begin() + static_cast<std::ptrdiff_t>(last));
  return out;
}

void write_dataset_csv(std::ostream& out, const PlayDataset& data) {
  for (std::size_t i = 0; i < data.agents(); ++i) {
    if (i) out << ',';
    out << "agent_" << i;
  }
  out << '\n';
  for (const auto& s : data) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != kRetain && s[i] != kUpgrade) {
        throw ValidationError("dataset CSV only holds actions 1 and 2");
      }
      if (i) out << ',';
      out << s[i];
    }
    out << '\n';
  }
}

void write_dataset_csv(const std::filesystem::path& path, const PlayDataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_dataset_csv(out, data);
  if (!out) throw Error("write failed: " + path.string());
}

PlayDataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("dataset CSV: missing header");
  std::size_t n = 0;
  {
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
      if (cell != "agent_" + std::to_string(n)) {
        throw ValidationError("dataset CSV: header column " + std::to_string(n) + " is '" + cell +
                              "', expected agent_" + std::to_string(n));
      }
      ++n;
    }
    if (n == 0 || line.back() == ',') throw ValidationError("dataset CSV: malformed header");
  }
  PlayDataset data(n);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    // Each cell is exactly one character: 1 or 2.
    if (line.size() != 2 * n - 1) {
      throw ValidationError("dataset CSV: row " + std::to_string(row) + " has wrong width");
    }
    std::vector<Action> actions(n);
    for (std::size_t i = 0; i < n; ++i) {
      const char c = line[2 * i];
      if ((c != '1' && c != '2') || (i + 1 < n && line[2 * i + 1] != ',')) {
        throw ValidationError("dataset CSV: row " + std::to_string(row) + " column " +
                              std::to_string(i) + " is not 1 or 2");
      }
      actions[i] = c - '0';
    }
    data.push_back(StrategyProfile(std::move(actions)));
  }
  return data;
}

PlayDataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_dataset_csv(in);
}

}  // namespace gmm
