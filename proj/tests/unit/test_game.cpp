#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gmm/core/inference.hpp"
#include "gmm/game/fixture.hpp"
#include "gmm/game/regret_model.hpp"
#include "gmm/util/error.hpp"
#include "oracle.hpp"

using namespace gmm;
using namespace gmm::game;

namespace {

GameInstance two_agents(Sector t0, Sector t1, double y_pair, double y0, double ch0 = 0.5) {
  return GameInstance::with_coefficients(InteractionGraph(2, {{0, 1}}),
                                         {{0, 2.0, t0, ch0}, {1, 3.0, t1, 0.5}},
                                         {{{0, 1}, y_pair}}, {y0, 0.0}, 0);
}

}  // namespace

TEST_CASE("pair weight") {
  const auto diff = two_agents(Sector::commerce, Sector::content, 1.0, 0.0);
  CHECK(pair_weight(diff, 0, 1, kUpgrade, kUpgrade) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(pair_weight(diff, 0, 1, kRetain, kUpgrade) == doctest::Approx(5.0).epsilon(1e-15));
  const auto same = two_agents(Sector::commerce, Sector::commerce, 1.0, 0.0);
  CHECK(pair_weight(same, 1, 0, kRetain, kRetain) == doctest::Approx(5.0 * (1.0 + 1.0 / 3.0)).epsilon(1e-15));
  const auto zero = two_agents(Sector::commerce, Sector::commerce, 0.0, 0.0);
  CHECK(pair_weight(zero, 0, 1, kRetain, kRetain) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK_THROWS_AS(pair_weight(GameInstance::build(InteractionGraph(3, {{0, 1}}), {{0, 1, Sector::commerce, 0.5}, {1, 1, Sector::commerce, 0.5}, {2, 1, Sector::commerce, 0.5}}, 1), 0, 2, 1, 1),
                  PreconditionError);
}

TEST_CASE("same-sector pairs weigh strictly more when actions agree") {
  for (double y : {0.01, 0.3, 1.0}) {
    const auto same = two_agents(Sector::infrastructure, Sector::infrastructure, y, 0.0);
    const auto diff = two_agents(Sector::infrastructure, Sector::content, y, 0.0);
    CHECK(pair_weight(same, 0, 1, kUpgrade, kUpgrade) > pair_weight(diff, 0, 1, kUpgrade, kUpgrade));
  }
}

TEST_CASE("flexibility") {
  CHECK(flexibility(0.9, kUpgrade) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(flexibility(0.5, kUpgrade) == doctest::Approx(0.0));
  CHECK(flexibility(0.0, kRetain) == doctest::Approx(0.0));
  CHECK(flexibility(0.2, kRetain) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(flexibility(0.2, kUpgrade) == doctest::Approx(-0.3).epsilon(1e-14));
  // Positive exactly when the action matches the company's flexibility.
  for (double ch : {0.05, 0.3, 0.45}) CHECK(flexibility(ch, kRetain) > 0.0);
  for (double ch : {0.55, 0.7, 0.95}) CHECK(flexibility(ch, kUpgrade) > 0.0);
  CHECK_THROWS_AS(flexibility(1.5, kRetain), PreconditionError);
}

TEST_CASE("payoff") {
  const auto g = two_agents(Sector::commerce, Sector::content, 1.0, 0.0);
  const std::vector<Action> same{kUpgrade, kUpgrade};
  CHECK(payoff(g, 0, same) == doctest::Approx(6.0).epsilon(1e-15));

  const auto flex = two_agents(Sector::commerce, Sector::content, 1.0, 0.5, 0.9);
  CHECK(payoff(flex, 0, same) == doctest::Approx((1.0 + 0.5 * 0.1) * 6.0).epsilon(1e-14));

  const auto isolated = GameInstance::build(InteractionGraph(3, {}), {{0, 10, Sector::commerce, 0.1}, {1, 20, Sector::content, 0.9}, {2, 5, Sector::commerce, 0.5}}, 4);
  CHECK(isolated.pair_coeffs().empty());
  for (std::uint64_t k = 0; k < 8; ++k) {
    const auto s = isolated.space().profile_at(k);
    for (AgentId i = 0; i < 3; ++i) {
      CHECK(payoff(isolated, i, s) == 0.0);
      CHECK(regret(isolated, i, s) == 0.0);
    }
  }
  CHECK_THROWS_AS(payoff(g, 0, std::vector<Action>{1}), PreconditionError);
}

TEST_CASE("payoffs and regrets on the default fixture match the formulas") {
  const auto g = testfx::default_game();
  oracle::for_each_profile(std::vector<int>(10, 2), [&](const oracle::Actions& a) {
    const StrategyProfile s(a);
    for (AgentId i = 0; i < 10; ++i) {
      CHECK(oracle::rel_close(payoff(g, i, s), oracle::payoff(g, i, a), 1e-13));
      const double r = regret(g, i, s);
      CHECK(oracle::rel_close(r, oracle::regret(g, i, a), 1e-12, 1e-9));
      CHECK(r >= 0.0);
    }
  });
}

TEST_CASE("every partner configuration has a zero-regret action") {
  const auto g = testfx::default_game();
  for (const auto& t : regret_tables(g)) {
    const auto hood = g.graph().neighborhood(t.owner);
    const auto pos = static_cast<std::size_t>(std::find(hood.begin(), hood.end(), t.owner) - hood.begin());
    const std::size_t bit = std::size_t{1} << pos;
    for (std::size_t local = 0; local < t.values.size(); ++local) {
      if (local & bit) continue;
      CHECK(std::min(t.values[local], t.values[local | bit]) == 0.0);
    }
  }
}

TEST_CASE("two-agent regret equals brute force over own actions") {
  const auto g = two_agents(Sector::commerce, Sector::commerce, 0.6, 0.8, 0.7);
  for (std::uint64_t k = 0; k < 4; ++k) {
    const auto s = g.space().profile_at(k);
    for (AgentId i = 0; i < 2; ++i) {
      double best = -1e300;
      for (Action a : {kRetain, kUpgrade}) {
        auto t = s;
        t[i] = a;
        best = std::max(best, payoff(g, i, t));
      }
      CHECK(regret(g, i, s) == doctest::Approx(best - payoff(g, i, s)).epsilon(1e-14));
    }
  }
}

TEST_CASE("game instances are deterministic and validated") {
  const auto f = load_fixture(testfx::path("partnership_default.json"));
  const auto a = GameInstance::build(f.graph, f.companies, 42);
  const auto b = GameInstance::build(f.graph, f.companies, 42);
  CHECK(a.pair_coeffs() == b.pair_coeffs());
  CHECK(a.flex_coeffs() == b.flex_coeffs());
  CHECK_FALSE(a.flex_coeffs() == GameInstance::build(f.graph, f.companies, 43).flex_coeffs());
  const auto s = a.space().profile_at(777);
  CHECK(payoff(a, 3, s) == payoff(b, 3, s));

  auto bad = f.companies;
  bad[1].size = 1000.0;
  bad[4].change_coeff = -0.1;
  try {
    GameInstance::build(f.graph, bad, 1);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("companies[1].size") != std::string::npos);
    CHECK(msg.find("companies[4].change_coeff") != std::string::npos);
  }
  CHECK_THROWS_AS(GameInstance::build(f.graph, {f.companies.begin(), f.companies.begin() + 3}, 1), ValidationError);
  CHECK_THROWS_AS(GameInstance::with_coefficients(InteractionGraph(2, {{0, 1}}), {{0, 1, Sector::commerce, 0.5}, {1, 1, Sector::commerce, 0.5}}, {{{0, 1}, 1.5}}, {0, 0}, 0),
                  ValidationError);
  CHECK_THROWS_AS(GameInstance::with_coefficients(InteractionGraph(2, {{0, 1}}), {{0, 1, Sector::commerce, 0.5}, {1, 1, Sector::commerce, 0.5}}, {}, {0, 0}, 0),
                  ValidationError);
  CHECK_THROWS_AS(parse_sector("retail"), ValidationError);
  CHECK(parse_sector(to_string(Sector::content)) == Sector::content);
}

TEST_CASE("default fixture shape") {
  const auto f = load_fixture(testfx::path("partnership_default.json"));
  CHECK(f.description.find("FIXTURE") != std::string::npos);
  CHECK(f.graph.size() == 10);
  for (AgentId i = 0; i < 10; ++i) {
    CHECK(f.graph.degree(i) >= 2);
    CHECK(f.graph.degree(i) <= 5);
    CHECK(f.companies[i].size >= 1.0);
    CHECK(f.companies[i].size <= 100.0);
  }
  for (auto t : {Sector::commerce, Sector::infrastructure, Sector::content}) {
    CHECK(std::any_of(f.companies.begin(), f.companies.end(), [&](const CompanyParams& c) { return c.sector == t; }));
  }
  const auto g = f.instantiate();
  CHECK(g.pair_coeffs().size() == f.graph.edges().size());
  for (const auto& [e, y] : g.pair_coeffs()) {
    CHECK(y >= 0.0);
    CHECK(y <= 1.0);
  }
  for (double y : g.flex_coeffs()) {
    CHECK(y >= 0.0);
    CHECK(y <= 1.0);
  }
}

TEST_CASE("the 4-agent fixture is the induced game of the four largest companies") {
  const auto full = testfx::default_game();
  const auto top = full.largest(4);
  CHECK(top == std::vector<AgentId>{0, 1, 2, 3});
  const auto induced = full.induced(top);
  const auto shipped = testfx::top4_game();
  CHECK(shipped.graph() == induced.graph());
  CHECK(shipped.companies() == induced.companies());
  CHECK(shipped.pair_coeffs() == induced.pair_coeffs());
  CHECK(shipped.flex_coeffs() == induced.flex_coeffs());
}

TEST_CASE("fixture JSON") {
  const auto f = load_fixture(testfx::path("partnership_top4.json"));
  const auto back = fixture_from_json(fixture_to_json(f));
  CHECK(back.graph == f.graph);
  CHECK(back.companies == f.companies);
  CHECK(back.pair_coeffs == f.pair_coeffs);
  CHECK(back.flex_coeffs == f.flex_coeffs);

  auto j = fixture_to_json(f);
  j["colour"] = "blue";
  CHECK_THROWS_AS(fixture_from_json(j), ValidationError);
  j = fixture_to_json(f);
  j.erase("edges");
  CHECK_THROWS_AS(fixture_from_json(j), ValidationError);
  CHECK_THROWS_AS(load_fixture("/nonexistent/fixture.json"), ValidationError);

  // A fixture may override only the flex coefficients; pair coefficients are
  // then drawn from the seed.
  j = fixture_to_json(f);
  j.erase("pair_coeffs");
  const auto partial = fixture_from_json(j).instantiate();
  CHECK(partial.flex_coeffs() == f.flex_coeffs.value());
  CHECK(partial.pair_coeffs().size() == 5);
}

TEST_CASE("regret GMM") {
  SUBCASE("potential is exp(-eps / T)") {
    const auto m = Gmm::from_regrets(InteractionGraph(1, {}), ProfileSpace::binary(1), {{0, {0}, {1.0, 0.0}}}, {1.0});
    CHECK(m.potentials()[0].values[0] == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  }
  SUBCASE("zero regrets give the uniform distribution") {
    const auto g = GameInstance::build(InteractionGraph(3, {}), {{0, 10, Sector::commerce, 0.1}, {1, 20, Sector::content, 0.9}, {2, 5, Sector::commerce, 0.5}}, 4);
    const auto m = build_regret_gmm(g, 2.0);
    for (double p : m.outcomes().prob) CHECK(p == doctest::Approx(0.125).epsilon(1e-14));
  }
  SUBCASE("tiny lambda tends to uniform") {
    const auto m = build_regret_gmm(testfx::default_game(), 1e-9);
    for (double p : m.outcomes().prob) CHECK(std::abs(p - 1.0 / 1024.0) < 1e-6);
  }
  SUBCASE("temperatures") {
    const auto t = Temperatures::from_temperatures({0.5, 2.0});
    CHECK(t.lambda() == std::vector<double>{2.0, 0.5});
    CHECK(t.temperatures() == std::vector<double>{0.5, 2.0});
    CHECK_THROWS_AS(Temperatures::from_temperatures({0.0}), ValidationError);
    CHECK_THROWS_AS(Temperatures::from_lambda({-1.0}), ValidationError);
    Rng rng(9);
    const auto s = Temperatures::sample(50, 0.5, 2.0, rng);
    for (double T : s.temperatures()) {
      CHECK(T >= 0.5);
      CHECK(T <= 2.0);
    }
    CHECK_THROWS_AS(build_regret_gmm(testfx::top4_game(), Temperatures::from_lambda({1.0})), ValidationError);
  }
  SUBCASE("regret tables are kept and lambda can be reset") {
    const auto g = testfx::top4_game();
    const auto m = build_regret_gmm(g, Temperatures::from_lambda({1.0, 2.0, 3.0, 4.0}));
    const auto m2 = m.with_lambda({0.1, 0.1, 0.1, 0.1});
    CHECK(m2.regrets()[2].values == m.regrets()[2].values);
    CHECK(m.lambda()[3] == 4.0);
    const auto exact = oracle::regret_joint(g, {0.1, 0.1, 0.1, 0.1});
    for (std::uint64_t k = 0; k < 16; ++k) CHECK(oracle::rel_close(m2.outcomes().prob[k], exact[k], 1e-10, 1e-300));
  }
}

TEST_CASE("lower regret in one neighborhood means higher probability") {
  const auto g = testfx::top4_game();
  const auto m = build_regret_gmm(g, 0.05);
  std::size_t compared = 0;
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      const auto sa = g.space().profile_at(a), sb = g.space().profile_at(b);
      for (AgentId i = 0; i < 4; ++i) {
        bool others_equal = true;
        for (AgentId j = 0; j < 4; ++j) {
          if (j != i && regret(g, j, sa) != regret(g, j, sb)) others_equal = false;
        }
        if (others_equal && regret(g, i, sa) < regret(g, i, sb)) {
          ++compared;
          CHECK(joint_probability(m, sa) > joint_probability(m, sb));
        }
      }
    }
  }
  CHECK(compared > 0);
}
