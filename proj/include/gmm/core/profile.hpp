#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "gmm/core/graph.hpp"

namespace gmm {

/// Action values are 1-based: 1 = retain, 2 = upgrade in the partnership
/// domain. Tables index them 0-based (value - 1).
using Action = int;
inline constexpr Action kRetain = 1;
inline constexpr Action kUpgrade = 2;

/// One joint action assignment.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<Action> actions) : actions_(std::move(actions)) {}

  std::size_t size() const noexcept { return actions_.size(); }
  Action operator[](AgentId i) const { return actions_[i]; }
  Action& operator[](AgentId i) { return actions_[i]; }
  std::span<const Action> actions() const noexcept { return actions_; }

  auto operator<=>(const StrategyProfile&) const = default;

 private:
  std::vector<Action> actions_;
};

/// Joint action space with mixed-radix profile indexing; agent 0 is the
/// least significant digit. For binary domains bit i of the index is
/// (s_i - 1).
class ProfileSpace {
 public:
  ProfileSpace() = default;
  explicit ProfileSpace(std::vector<int> action_counts);
  static ProfileSpace binary(std::size_t n) { return ProfileSpace(std::vector<int>(n, 2)); }

  std::size_t agents() const noexcept { return counts_.size(); }
  int actions(AgentId i) const { return counts_[i]; }
  std::span<const int> action_counts() const noexcept { return counts_; }
  bool all_binary() const noexcept { return all_binary_; }

  /// Number of joint profiles, saturating at UINT64_MAX.
  std::uint64_t profile_count() const noexcept { return profile_count_; }
  std::uint64_t stride(AgentId i) const { return strides_[i]; }

  /// 0-based action index of agent i inside profile `index`.
  int digit(std::uint64_t index, AgentId i) const {
    if (all_binary_) return static_cast<int>((index >> i) & 1U);
    return static_cast<int>((index / strides_[i]) % static_cast<std::uint64_t>(counts_[i]));
  }

  bool valid(const StrategyProfile& s) const;
  std::uint64_t index_of(const StrategyProfile& s) const;
  StrategyProfile profile_at(std::uint64_t index) const;

  /// Local configurations over `scope` (product of its action counts).
  std::size_t config_count(std::span<const AgentId> scope) const;
  /// Mixed-radix index of the scope's actions in `s`, first scope agent
  /// least significant.
  std::size_t local_index(std::span<const AgentId> scope, const StrategyProfile& s) const;
  std::size_t local_index(std::span<const AgentId> scope, std::uint64_t profile) const;
  std::size_t local_index(std::span<const AgentId> scope, std::span<const Action> config) const;
  /// Action values (1-based) of local configuration `local`, aligned with scope.
  std::vector<Action> local_config(std::span<const AgentId> scope, std::size_t local) const;

  friend bool operator==(const ProfileSpace& a, const ProfileSpace& b) {
    return a.counts_ == b.counts_;
  }

 private:
  std::vector<int> counts_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t profile_count_ = 1;
  bool all_binary_ = true;
};

}  // namespace gmm
