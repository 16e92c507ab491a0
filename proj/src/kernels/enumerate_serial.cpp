#include <algorithm>
#include <cmath>
#include <limits>

#include "gmm/kernels/enumerate.hpp"
#include "gmm/util/error.hpp"
#include "layout.hpp"

namespace gmm::kernels::serial {

void factor_sums(const FactorLayout& layout, std::span<double> out) {
  require(out.size() == layout.profiles(), "factor_sums: output size mismatch");
  for (std::uint64_t p = 0; p < out.size(); ++p) {
    double acc = 0.0;
    for (std::size_t f = 0; f < layout.factors(); ++f) {
      acc += layout.values[layout.table_offset[f] + detail::factor_local(layout, f, p)];
    }
    out[p] = acc;
  }
}

void factor_matrix(const FactorLayout& layout, std::span<double> out) {
  const std::size_t nf = layout.factors();
  require(out.size() == layout.profiles() * nf, "factor_matrix: output size mismatch");
  for (std::uint64_t p = 0; p < layout.profiles(); ++p) {
    for (std::size_t f = 0; f < nf; ++f) {
      out[p * nf + f] = layout.values[layout.table_offset[f] + detail::factor_local(layout, f, p)];
    }
  }
}

void factor_expectations(const FactorLayout& layout, std::span<const double> weights,
                         std::span<double> out) {
  require(weights.size() == layout.profiles() && out.size() == layout.factors(),
          "factor_expectations: size mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  for (std::uint64_t p = 0; p < weights.size(); ++p) {
    for (std::size_t f = 0; f < layout.factors(); ++f) {
      out[f] += weights[p] * layout.values[layout.table_offset[f] + detail::factor_local(layout, f, p)];
    }
  }
}

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  const double shift = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(shift)) return shift;
  double s = 0.0;
  for (double v : x) s += std::exp(v - shift);
  return shift + std::log(s);
}

void exp_shifted(std::span<const double> x, double shift, std::span<double> out) {
  require(x.size() == out.size(), "exp_shifted: size mismatch");
  for (std::size_t p = 0; p < x.size(); ++p) out[p] = std::exp(x[p] - shift);
}

void scope_accumulate(const ProfileSpace& space, std::span<const AgentId> scope,
                      std::span<const double> weights, std::span<double> bins) {
  require(weights.size() == space.profile_count(), "scope_accumulate: weight size mismatch");
  require(bins.size() == space.config_count(scope), "scope_accumulate: bin size mismatch");
  const auto mult = detail::scope_multipliers(space, scope);
  for (std::uint64_t p = 0; p < weights.size(); ++p) {
    bins[detail::scope_local(space, scope, mult, p)] += weights[p];
  }
}

void linear_scores(std::span<const double> design, std::size_t cols,
                   std::span<const double> coef, std::span<double> out) {
  require(coef.size() == cols && design.size() == out.size() * cols,
          "linear_scores: size mismatch");
  for (std::size_t p = 0; p < out.size(); ++p) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += design[p * cols + j] * coef[j];
    out[p] = acc;
  }
}

void weighted_column_sums(std::span<const double> design, std::size_t cols,
                          std::span<const double> weights, std::span<double> out) {
  require(out.size() == cols && design.size() == weights.size() * cols,
          "weighted_column_sums: size mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t p = 0; p < weights.size(); ++p) {
    for (std::size_t j = 0; j < cols; ++j) out[j] += weights[p] * design[p * cols + j];
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dot: size mismatch");
  double s = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) s += a[p] * b[p];
  return s;
}

}  // namespace gmm::kernels::serial
