#include "gmm/kernels/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gmm/util/error.hpp"
#include "layout.hpp"

namespace gmm::kernels {

namespace {

using std::int64_t;

int64_t block_count(std::uint64_t n) {
  return static_cast<int64_t>((n + kBlockSize - 1) / kBlockSize);
}

std::uint64_t block_begin(int64_t b) { return static_cast<std::uint64_t>(b) * kBlockSize; }

std::uint64_t block_end(int64_t b, std::uint64_t n) {
  return std::min(n, static_cast<std::uint64_t>(b + 1) * kBlockSize);
}

// Parallel only when there is more than one block; short loops stay serial
// and skip the fork/join entirely.
bool go_parallel(std::uint64_t n) { return n > kBlockSize; }

}  // namespace

FactorLayout FactorLayout::build(const ProfileSpace& space,
                                 std::span<const NeighborhoodTable> tables) {
  FactorLayout l;
  l.space = space;
  l.scope_offset.push_back(0);
  l.table_offset.push_back(0);
  for (const auto& t : tables) {
    std::size_t m = 1;
    for (AgentId a : t.scope) {
      require(a < space.agents(), "factor scope references unknown agent");
      l.scope_agents.push_back(a);
      l.scope_mult.push_back(m);
      m *= static_cast<std::size_t>(space.actions(a));
    }
    require(t.values.size() == m, "factor table does not cover its scope");
    l.values.insert(l.values.end(), t.values.begin(), t.values.end());
    l.scope_offset.push_back(l.scope_agents.size());
    l.table_offset.push_back(l.values.size());
  }
  return l;
}

void factor_sums(const FactorLayout& layout, std::span<double> out) {
  const std::uint64_t n = layout.profiles();
  require(out.size() == n, "factor_sums: output size mismatch");
  const std::size_t nf = layout.factors();
#pragma omp parallel for schedule(static) if (go_parallel(n))
  for (int64_t pi = 0; pi < static_cast<int64_t>(n); ++pi) {
    const auto p = static_cast<std::uint64_t>(pi);
    double acc = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
      acc += layout.values[layout.table_offset[f] + detail::factor_local(layout, f, p)];
    }
    out[p] = acc;
  }
}

void factor_matrix(const FactorLayout& layout, std::span<double> out) {
  const std::uint64_t n = layout.profiles();
  const std::size_t nf = layout.factors();
  require(out.size() == n * nf, "factor_matrix: output size mismatch");
#pragma omp parallel for schedule(static) if (go_parallel(n))
  for (int64_t pi = 0; pi < static_cast<int64_t>(n); ++pi) {
    const auto p = static_cast<std::uint64_t>(pi);
    for (std::size_t f = 0; f < nf; ++f) {
      out[p * nf + f] = layout.values[layout.table_offset[f] + detail::factor_local(layout, f, p)];
    }
  }
}

void factor_expectations(const FactorLayout& layout, std::span<const double> weights,
                         std::span<double> out) {
  const std::uint64_t n = layout.profiles();
  const std::size_t nf = layout.factors();
  require(weights.size() == n && out.size() == nf, "factor_expectations: size mismatch");
  const int64_t nb = block_count(n);
  std::vector<double> partial(static_cast<std::size_t>(nb) * nf, 0.0);
#pragma omp parallel for schedule(static) if (go_parallel(n))
  for (int64_t b = 0; b < nb; ++b) {
    double* acc = partial.data() + static_cast<std::size_t>(b) * nf;
    for (std::uint64_t p = block_begin(b); p < block_end(b, n); ++p) {
      const double w = weights[p];
      for (std::size_t f = 0; f < nf; ++f) {
        acc[f] += w * layout.values[layout.table_offset[f] + detail::factor_local(layout, f, p)];
      }
    }
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (int64_t b = 0; b < nb; ++b) {
    for (std::size_t f = 0; f < nf; ++f) out[f] += partial[static_cast<std::size_t>(b) * nf + f];
  }
}

double log_sum_exp(std::span<const double> x) {
  const std::uint64_t n = x.size();
  if (n == 0) return -std::numeric_limits<double>::infinity();
  const int64_t nb = block_count(n);
  std::vector<double> part(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static) if (go_parallel(n))
  for (int64_t b = 0; b < nb; ++b) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::uint64_t p = block_begin(b); p < block_end(b, n); ++p) m = std::max(m, x[p]);
    part[static_cast<std::size_t>(b)] = m;
  }
  const double shift = *std::max_element(part.begin(), part.end());
  if (!std::isfinite(shift)) return shift;
#pragma omp parallel for schedule(static) if (go_parallel(n))
  for (int64_t b = 0; b < nb; ++b) {
    double s = 0.0;
    for (std::uint64_t p = block_begin(b); p < block_end(b, n); ++p) s += std::exp(x[p] - shift);
    part[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double s : part) total += s;
  return shift + std::log(total);
}

void exp_shifted(std::span<const double> x, double shift, std::span<double> out) {
  require(x.size() == out.size(), "exp_shifted: size mismatch");
  const auto n = static_cast<int64_t>(x.size());
#pragma omp parallel for schedule(static) if (go_parallel(x.size()))
  for (int64_t p = 0; p < n; ++p) out[p] = std::exp(x[p] - shift);
}

void scope_accumulate(const ProfileSpace& space, std::span<const AgentId> scope,
                      std::span<const double> weights, std::span<double> bins) {
  const std::uint64_t n = weights.size();
  require(n == space.profile_count(), "scope_accumulate: weight size mismatch");
  require(bins.size() == space.config_count(scope), "scope_accumulate: bin size mismatch");
  const auto mult = detail::scope_multipliers(space, scope);
  const std::size_t nbins = bins.size();
  const int64_t nb = block_count(n);
  // Wide scopes would make per-block bins too large; those run serially.
  if (!go_parallel(n) || nbins > kBlockSize) {
    serial::scope_accumulate(space, scope, weights, bins);
    return;
  }
  std::vector<double> partial(static_cast<std::size_t>(nb) * nbins, 0.0);
#pragma omp parallel for schedule(static)
  for (int64_t b = 0; b < nb; ++b) {
    double* acc = partial.data() + static_cast<std::size_t>(b) * nbins;
    for (std::uint64_t p = block_begin(b); p < block_end(b, n); ++p) {
      acc[detail::scope_local(space, scope, mult, p)] += weights[p];
    }
  }
  for (int64_t b = 0; b < nb; ++b) {
    for (std::size_t k = 0; k < nbins; ++k) bins[k] += partial[static_cast<std::size_t>(b) * nbins + k];
  }
}

void linear_scores(std::span<const double> design, std::size_t cols,
                   std::span<const double> coef, std::span<double> out) {
  require(coef.size() == cols && design.size() == out.size() * cols,
          "linear_scores: size mismatch");
  const auto n = static_cast<int64_t>(out.size());
#pragma omp parallel for schedule(static) if (go_parallel(out.size()))
  for (int64_t p = 0; p < n; ++p) {
    const double* row = design.data() + static_cast<std::size_t>(p) * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * coef[j];
    out[p] = acc;
  }
}

void weighted_column_sums(std::span<const double> design, std::size_t cols,
                          std::span<const double> weights, std::span<double> out) {
  const std::uint64_t n = weights.size();
  require(out.size() == cols && design.size() == n * cols, "weighted_column_sums: size mismatch");
  const int64_t nb = block_count(n);
  std::vector<double> partial(static_cast<std::size_t>(nb) * cols, 0.0);
#pragma omp parallel for schedule(static) if (go_parallel(n))
  for (int64_t b = 0; b < nb; ++b) {
    double* acc = partial.data() + static_cast<std::size_t>(b) * cols;
    for (std::uint64_t p = block_begin(b); p < block_end(b, n); ++p) {
      const double* row = design.data() + p * cols;
      const double w = weights[p];
      for (std::size_t j = 0; j < cols; ++j) acc[j] += w * row[j];
    }
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (int64_t b = 0; b < nb; ++b) {
    for (std::size_t j = 0; j < cols; ++j) out[j] += partial[static_cast<std::size_t>(b) * cols + j];
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dot: size mismatch");
  const std::uint64_t n = a.size();
  const int64_t nb = block_count(n);
  std::vector<double> part(static_cast<std::size_t>(nb), 0.0);
#pragma omp parallel for schedule(static) if (go_parallel(n))
  for (int64_t bl = 0; bl < nb; ++bl) {
    double s = 0.0;
    for (std::uint64_t p = block_begin(bl); p < block_end(bl, n); ++p) s += a[p] * b[p];
    part[static_cast<std::size_t>(bl)] = s;
  }
  double total = 0.0;
  for (double s : part) total += s;
  return total;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace gmm::kernels
