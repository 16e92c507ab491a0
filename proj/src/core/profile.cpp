#include "gmm/core/profile.hpp"

#include <limits>
#include <string>

#include "gmm/util/error.hpp"

namespace gmm {

ProfileSpace::ProfileSpace(std::vector<int> action_counts) : counts_(std::move(action_counts)) {
  strides_.reserve(counts_.size());
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t stride = 1;
  for (int c : counts_) {
    if (c < 2) throw ValidationError("every agent needs at least two actions");
    if (c != 2) all_binary_ = false;
    strides_.push_back(stride);
    const auto uc = static_cast<std::uint64_t>(c);
    stride = stride > kMax / uc ? kMax : stride * uc;
  }
  profile_count_ = stride;
}

bool ProfileSpace::valid(const StrategyProfile& s) const {
  if (s.size() != counts_.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > counts_[i]) return false;
  }
  return true;
}

std::uint64_t ProfileSpace::index_of(const StrategyProfile& s) const {
  require(valid(s), "strategy profile does not match the action space");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    idx += static_cast<std::uint64_t>(s[i] - 1) * strides_[i];
  }
  return idx;
}

StrategyProfile ProfileSpace::profile_at(std::uint64_t index) const {
  require(index < profile_count_, "profile index out of range");
  std::vector<Action> actions(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) actions[i] = digit(index, i) + 1;
  return StrategyProfile(std::move(actions));
}

std::size_t ProfileSpace::config_count(std::span<const AgentId> scope) const {
  std::size_t m = 1;
  for (AgentId a : scope) {
    require(a < counts_.size(), "scope references unknown agent " + std::to_string(a));
    m *= static_cast<std::size_t>(counts_[a]);
  }
  return m;
}

std::size_t ProfileSpace::local_index(std::span<const AgentId> scope,
                                      const StrategyProfile& s) const {
  std::size_t local = 0;
  std::size_t m = 1;
  for (AgentId a : scope) {
    require(a < s.size() && s[a] >= 1 && s[a] <= counts_[a], "invalid action in profile");
    local += static_cast<std::size_t>(s[a] - 1) * m;
    m *= static_cast<std::size_t>(counts_[a]);
  }
  return local;
}

std::size_t ProfileSpace::local_index(std::span<const AgentId> scope,
                                      std::uint64_t profile) const {
  std::size_t local = 0;
  std::size_t m = 1;
  for (AgentId a : scope) {
    local += static_cast<std::size_t>(digit(profile, a)) * m;
    m *= static_cast<std::size_t>(counts_[a]);
  }
  return local;
}

std::size_t ProfileSpace::local_index(std::span<const AgentId> scope,
                                      std::span<const Action> config) const {
  require(config.size() == scope.size(), "configuration does not cover the scope");
  std::size_t local = 0;
  std::size_t m = 1;
  for (std::size_t k = 0; k < scope.size(); ++k) {
    const int c = counts_[scope[k]];
    require(config[k] >= 1 && config[k] <= c, "invalid action in configuration");
    local += static_cast<std::size_t>(config[k] - 1) * m;
    m *= static_cast<std::size_t>(c);
  }
  return local;
}

std::vector<Action> ProfileSpace::local_config(std::span<const AgentId> scope,
                                               std::size_t local) const {
  std::vector<Action> cfg(scope.size());
  for (std::size_t k = 0; k < scope.size(); ++k) {
    const auto c = static_cast<std::size_t>(counts_[scope[k]]);
    cfg[k] = static_cast<Action>(local % c) + 1;
    local /= c;
  }
  return cfg;
}

}  // namespace gmm
