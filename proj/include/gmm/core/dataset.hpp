#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gmm/core/profile.hpp"

namespace gmm {

/// Ordered multiset of strategy profiles over a fixed agent count.
class PlayDataset {
 public:
  PlayDataset() = default;
  explicit PlayDataset(std::size_t n) : n_(n) {}
  PlayDataset(std::size_t n, std::vector<StrategyProfile> profiles);

  std::size_t agents() const noexcept { return n_; }
  std::size_t size() const noexcept { return profiles_.size(); }
  bool empty() const noexcept { return profiles_.empty(); }
  const StrategyProfile& operator[](std::size_t k) const { return profiles_[k]; }
  const std::vector<StrategyProfile>& profiles() const noexcept { return profiles_; }
  auto begin() const { return profiles_.begin(); }
  auto end() const { return profiles_.end(); }

  void push_back(StrategyProfile s);
  void reserve(std::size_t k) { profiles_.reserve(k); }

  /// First `count` profiles (count clamped to size()).
  PlayDataset head(std::size_t count) const;
  /// Profiles [first, last).
  PlayDataset slice(std::size_t first, std::size_t last) const;

  friend bool operator==(const PlayDataset&, const PlayDataset&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<StrategyProfile> profiles_;
};

/// CSV: header `agent_0,...,agent_{n-1}`, one row per profile, cells `1` or
/// `2`, `\n` line endings, no trailing comma.
void write_dataset_csv(std::ostream& out, const PlayDataset& data);
void write_dataset_csv(const std::filesystem::path& path, const PlayDataset& data);
PlayDataset read_dataset_csv(std::istream& in);
PlayDataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace gmm
