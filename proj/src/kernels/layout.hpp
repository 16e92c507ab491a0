#pragma once

#include "gmm/kernels/enumerate.hpp"

namespace gmm::kernels::detail {

inline std::size_t factor_local(const FactorLayout& l, std::size_t f, std::uint64_t p) {
  std::size_t local = 0;
  for (std::size_t k = l.scope_offset[f]; k < l.scope_offset[f + 1]; ++k) {
    local += static_cast<std::size_t>(l.space.digit(p, l.scope_agents[k])) * l.scope_mult[k];
  }
  return local;
}

inline std::size_t scope_local(const ProfileSpace& space, std::span<const AgentId> scope,
                               std::span<const std::size_t> mult, std::uint64_t p) {
  std::size_t local = 0;
  for (std::size_t k = 0; k < scope.size(); ++k) {
    local += static_cast<std::size_t>(space.digit(p, scope[k])) * mult[k];
  }
  return local;
}

inline std::vector<std::size_t> scope_multipliers(const ProfileSpace& space,
                                                  std::span<const AgentId> scope) {
  std::vector<std::size_t> mult(scope.size());
  std::size_t m = 1;
  for (std::size_t k = 0; k < scope.size(); ++k) {
    mult[k] = m;
    m *= static_cast<std::size_t>(space.actions(scope[k]));
  }
  return mult;
}

}  // namespace gmm::kernels::detail
