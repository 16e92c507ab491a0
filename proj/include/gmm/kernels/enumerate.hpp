#pragma once

// Data-parallel kernels over the joint profile space.
//
// Every kernel sweeps all profiles of a model (up to 2^20). The default
// versions use OpenMP. Reductions are split into fixed-size blocks whose
// partial results are combined in block order, so results are bit-identical
// for any thread count. The `serial` namespace keeps straightforward
// single-loop references used by the tests and the benchmark.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gmm/core/gmm.hpp"
#include "gmm/core/profile.hpp"

namespace gmm::kernels {

/// Profiles per reduction block.
inline constexpr std::uint64_t kBlockSize = 4096;

/// Flattened set of neighborhood tables, ready for enumeration.
struct FactorLayout {
  ProfileSpace space;
  std::vector<std::size_t> scope_offset;  // factors + 1
  std::vector<AgentId> scope_agents;
  std::vector<std::size_t> scope_mult;    // local-index multiplier per scope entry
  std::vector<std::size_t> table_offset;  // factors + 1
  std::vector<double> values;

  static FactorLayout build(const ProfileSpace& space, std::span<const NeighborhoodTable> tables);
  std::size_t factors() const noexcept { return table_offset.size() - 1; }
  std::uint64_t profiles() const noexcept { return space.profile_count(); }
};

/// out[p] = sum_f table_f(local_f(p)).
void factor_sums(const FactorLayout& layout, std::span<double> out);
/// Row-major profiles x factors matrix: out[p * F + f] = table_f(local_f(p)).
void factor_matrix(const FactorLayout& layout, std::span<double> out);
/// out[f] = sum_p weights[p] * table_f(local_f(p)).
void factor_expectations(const FactorLayout& layout, std::span<const double> weights,
                         std::span<double> out);
/// log(sum_p exp(x[p])) with max shift.
double log_sum_exp(std::span<const double> x);
/// out[p] = exp(x[p] - shift).
void exp_shifted(std::span<const double> x, double shift, std::span<double> out);
/// bins[local(scope, p)] += weights[p]; bins must be zeroed by the caller.
void scope_accumulate(const ProfileSpace& space, std::span<const AgentId> scope,
                      std::span<const double> weights, std::span<double> bins);
/// Row-major design matrix (rows = profiles): out[p] = sum_j design[p, j] * coef[j].
void linear_scores(std::span<const double> design, std::size_t cols,
                   std::span<const double> coef, std::span<double> out);
/// out[j] = sum_p weights[p] * design[p, j].
void weighted_column_sums(std::span<const double> design, std::size_t cols,
                          std::span<const double> weights, std::span<double> out);
/// sum_p a[p] * b[p].
double dot(std::span<const double> a, std::span<const double> b);

namespace serial {
void factor_sums(const FactorLayout& layout, std::span<double> out);
void factor_matrix(const FactorLayout& layout, std::span<double> out);
void factor_expectations(const FactorLayout& layout, std::span<const double> weights,
                         std::span<double> out);
double log_sum_exp(std::span<const double> x);
void exp_shifted(std::span<const double> x, double shift, std::span<double> out);
void scope_accumulate(const ProfileSpace& space, std::span<const AgentId> scope,
                      std::span<const double> weights, std::span<double> bins);
void linear_scores(std::span<const double> design, std::size_t cols,
                   std::span<const double> coef, std::span<double> out);
void weighted_column_sums(std::span<const double> design, std::size_t cols,
                          std::span<const double> weights, std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace serial

/// Threads the kernels will use (1 without OpenMP).
int max_threads();

}  // namespace gmm::kernels
