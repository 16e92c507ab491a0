#include <doctest.h>

#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gmm/core/gmm.hpp"
#include "gmm/kernels/enumerate.hpp"

using namespace gmm;

namespace {

struct RandomLayout {
  kernels::FactorLayout layout;
  std::vector<double> weights;
};

RandomLayout random_layout(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<int> counts(n, 2);
  counts[n / 2] = 3;
  const ProfileSpace space(counts);
  std::vector<NeighborhoodTable> tables;
  for (AgentId i = 0; i < n; ++i) {
    NeighborhoodTable t{i, {}, {}};
    for (AgentId j : {(i + n - 1) % n, i, (i + 1) % n}) t.scope.push_back(j);
    std::sort(t.scope.begin(), t.scope.end());
    t.scope.erase(std::unique(t.scope.begin(), t.scope.end()), t.scope.end());
    t.values.resize(space.config_count(t.scope));
    for (double& v : t.values) v = u(rng);
    tables.push_back(std::move(t));
  }
  RandomLayout r{kernels::FactorLayout::build(space, tables), std::vector<double>(space.profile_count())};
  for (double& w : r.weights) w = std::exp(u(rng));
  return r;
}

void set_threads([[maybe_unused]] int t) {
#ifdef _OPENMP
  omp_set_num_threads(t);
#endif
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST_CASE("parallel kernels agree with the serial references") {
  for (std::size_t n : {4, 9, 13, 15}) {
    const auto r = random_layout(n, n);
    const auto& l = r.layout;
    const auto np = l.profiles();
    const auto nf = l.factors();

    std::vector<double> a(np), b(np);
    kernels::factor_sums(l, a);
    kernels::serial::factor_sums(l, b);
    CHECK(a == b);

    std::vector<double> ma(np * nf), mb(np * nf);
    kernels::factor_matrix(l, ma);
    kernels::serial::factor_matrix(l, mb);
    CHECK(ma == mb);

    std::vector<double> ea(nf), eb(nf);
    kernels::factor_expectations(l, r.weights, ea);
    kernels::serial::factor_expectations(l, r.weights, eb);
    for (std::size_t f = 0; f < nf; ++f) CHECK(close(ea[f], eb[f]));

    CHECK(close(kernels::log_sum_exp(a), kernels::serial::log_sum_exp(a)));
    CHECK(close(kernels::dot(a, r.weights), kernels::serial::dot(a, r.weights)));

    std::vector<double> xa(np), xb(np);
    kernels::exp_shifted(a, 1.5, xa);
    kernels::serial::exp_shifted(a, 1.5, xb);
    CHECK(xa == xb);

    std::vector<double> coef(nf);
    for (std::size_t f = 0; f < nf; ++f) coef[f] = 0.1 * static_cast<double>(f + 1);
    kernels::linear_scores(ma, nf, coef, xa);
    kernels::serial::linear_scores(ma, nf, coef, xb);
    CHECK(xa == xb);

    kernels::weighted_column_sums(ma, nf, r.weights, ea);
    kernels::serial::weighted_column_sums(ma, nf, r.weights, eb);
    for (std::size_t f = 0; f < nf; ++f) CHECK(close(ea[f], eb[f]));

    const std::vector<AgentId> scope{n - 1, 0, n / 2};
    std::vector<double> ba(l.space.config_count(scope), 0.0), bb(ba.size(), 0.0);
    kernels::scope_accumulate(l.space, scope, r.weights, ba);
    kernels::serial::scope_accumulate(l.space, scope, r.weights, bb);
    for (std::size_t k = 0; k < ba.size(); ++k) CHECK(close(ba[k], bb[k]));
  }
}

TEST_CASE("a single reduction block reproduces the serial reference bit for bit") {
  const auto r = random_layout(10, 3);  // 1536 profiles < one block
  REQUIRE(r.layout.profiles() <= kernels::kBlockSize);
  std::vector<double> a(r.layout.profiles());
  kernels::factor_sums(r.layout, a);
  CHECK(kernels::log_sum_exp(a) == kernels::serial::log_sum_exp(a));
  CHECK(kernels::dot(a, r.weights) == kernels::serial::dot(a, r.weights));
}

TEST_CASE("reductions are bit-identical for any thread count") {
  const int original = kernels::max_threads();
  const auto r = random_layout(16, 8);
  std::vector<double> a(r.layout.profiles());
  kernels::factor_sums(r.layout, a);
  const auto nf = r.layout.factors();
  std::vector<double> ref(nf), got(nf);

  set_threads(1);
  const double lse1 = kernels::log_sum_exp(a);
  const double dot1 = kernels::dot(a, r.weights);
  kernels::factor_expectations(r.layout, r.weights, ref);
  for (int t : {2, 3, 7}) {
    set_threads(t);
    CHECK(kernels::log_sum_exp(a) == lse1);
    CHECK(kernels::dot(a, r.weights) == dot1);
    kernels::factor_expectations(r.layout, r.weights, got);
    CHECK(got == ref);
  }
  set_threads(original);
}

TEST_CASE("kernel edge cases") {
  CHECK(std::isinf(kernels::log_sum_exp({})));
  const std::vector<double> ninf(3, -INFINITY);
  CHECK(kernels::log_sum_exp(ninf) == -INFINITY);
  const std::vector<double> big{1000.0, 1000.0};
  CHECK(kernels::log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(kernels::max_threads() >= 1);
}
