#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gmm/core/inference.hpp"
#include "gmm/heuristic/heuristic.hpp"
#include "gmm/util/error.hpp"
#include "oracle.hpp"

using namespace gmm;
using namespace gmm::heuristic;
using game::CompanyParams;
using game::GameInstance;
using game::Sector;

namespace {

GameInstance single(double z) {
  return GameInstance::build(InteractionGraph(1, {}), {{0, z, Sector::commerce, 0.5}}, 1);
}

}  // namespace

TEST_CASE("pChange rule") {
  CHECK(p_change(single(100.0), 0, HeuristicSpec::pchange()) == doctest::Approx(0.44955).epsilon(1e-14));
  const auto g = testfx::default_game();
  for (AgentId i = 0; i < g.agents(); ++i) {
    const double p = p_change(g, i, HeuristicSpec::pchange());
    const double expected = 0.5 * std::pow(0.999, static_cast<double>(g.graph().degree(i) + 1)) *
                            (1.0 - 0.001 * g.company(i).size);
    CHECK(p == doctest::Approx(expected).epsilon(1e-14));
    CHECK(p > 0.0);
    CHECK(p < 0.5);
    CHECK(p_change(g, i, HeuristicSpec::constant(0.05)) == 0.05);
  }
}

TEST_CASE("pChange decreases with size and with partners") {
  CHECK(p_change(single(10.0), 0, HeuristicSpec::pchange()) > p_change(single(11.0), 0, HeuristicSpec::pchange()));
  const std::vector<CompanyParams> three{{0, 10, Sector::commerce, 0.5}, {1, 10, Sector::commerce, 0.5}, {2, 10, Sector::commerce, 0.5}};
  const auto one = GameInstance::build(InteractionGraph(3, {{0, 1}}), three, 1);
  const auto two = GameInstance::build(InteractionGraph(3, {{0, 1}, {0, 2}}), three, 1);
  CHECK(p_change(one, 0, HeuristicSpec::pchange()) > p_change(two, 0, HeuristicSpec::pchange()));
}

TEST_CASE("heuristic rule validation") {
  CHECK_THROWS_AS(HeuristicSpec::constant(0.0), ValidationError);
  CHECK_THROWS_AS(HeuristicSpec::constant(1.0), ValidationError);
  CHECK_NOTHROW(HeuristicSpec::constant(0.999));
  // Sizes of 1000 and beyond cannot be built, so p_change never sees them.
  CHECK_THROWS_AS(single(1000.0), ValidationError);
}

TEST_CASE("hG is the product of independent per-agent distributions") {
  const auto g = testfx::top4_game();
  for (const auto& spec : {HeuristicSpec::pchange(), HeuristicSpec::constant(0.05)}) {
    const auto hg = build_heuristic_gmm(g, spec);
    CHECK(std::abs(log_partition(hg)) < 1e-15);
    for (AgentId i = 0; i < 4; ++i) {
      const auto m = marginal(hg, i);
      CHECK(m[1] == doctest::Approx(p_change(g, i, spec)).epsilon(1e-14));
    }
    oracle::for_each_profile({2, 2, 2, 2}, [&](const oracle::Actions& a) {
      double expected = 1.0;
      for (AgentId i = 0; i < 4; ++i) {
        const double p = p_change(g, i, spec);
        expected *= a[i] == 2 ? p : 1.0 - p;
      }
      CHECK(oracle::rel_close(joint_probability(hg, StrategyProfile(a)), expected, 1e-13));
    });
  }
}

TEST_CASE("hM sampling") {
  const auto g = testfx::default_game();
  const auto spec = HeuristicSpec::constant(0.05);
  CHECK(sample_heuristic(g, spec, 100, 3) == sample_heuristic(g, spec, 100, 3));
  const auto data = sample_heuristic(g, spec, 10000, 12);
  for (AgentId i = 0; i < 10; ++i) {
    double f = 0.0;
    for (const auto& s : data) f += s[i] == kUpgrade ? 1e-4 : 0.0;
    CHECK(std::abs(f - 0.05) < 0.01);
  }
  CHECK_THROWS_AS(sample_heuristic(g, spec, 0, 3), PreconditionError);
}

TEST_CASE("hM and hG agree on a 4-agent instance") {
  const auto g = testfx::top4_game();
  const auto spec = HeuristicSpec::pchange();
  const auto hg = build_heuristic_gmm(g, spec);
  const std::size_t m = 100000;
  const auto data = sample_heuristic(g, spec, m, 77);
  std::vector<double> freq(16, 0.0);
  for (const auto& s : data) freq[g.space().index_of(s)] += 1.0 / static_cast<double>(m);
  double tv = 0.0;
  for (std::uint64_t k = 0; k < 16; ++k) {
    const double p = joint_probability(hg, g.space().profile_at(k));
    CHECK(std::abs(freq[k] - p) < 0.01);
    tv += 0.5 * std::abs(freq[k] - p);
  }
  CHECK(tv < 0.02);
}
