#include <random>

#include <gtest/gtest.h>

#include "dtw/error.h"
#include "dtw/expand.h"
#include "dtw/game.h"
#include "dtw/minimality.h"
#include "dtw/semantics.h"
#include "dtw/syntax.h"
#include "oracles.h"

namespace dtw {
namespace {

TEST(Minimal, TarasoffKindOne) {
  const Game g = tarasoff_game();
  const std::size_t play = g.find_play("Oct | poddar=1,parents=1,university=0 | dead");
  const Formula killed = parse_formula("killed");
  EXPECT_TRUE(check_minimal(1, g, play, {"university"}, Coalition{"parents"}, killed));
  EXPECT_FALSE(holds(g, play, parse_formula("B[][parents] killed")).holds);
}

TEST(Minimal, KindOneWithEmptyKnowersIsPlainBlame) {
  const Game g = tarasoff_game();
  const Formula killed = parse_formula("killed");
  for (std::size_t q = 0; q < g.plays().size(); ++q) {
    for (const Coalition& d : {Coalition{}, Coalition{"parents"}, Coalition{"poddar"},
                               Coalition{"parents", "poddar"}}) {
      EXPECT_EQ(check_minimal(1, g, q, {}, d, killed),
                holds(g, q, Formula::blame({}, d, killed)).holds);
    }
  }
}

TEST(Minimal, KindFourReportsActors) {
  const Game g = tarasoff_game();
  const std::size_t play = g.find_play("Oct | poddar=1,parents=1,university=0 | dead");
  const MinimalVerdict v =
      check_minimal_verdict(4, g, play, {"university"}, std::nullopt, parse_formula("killed"));
  ASSERT_TRUE(v.holds);
  ASSERT_TRUE(v.actors.has_value());
  EXPECT_TRUE(check_minimal(3, g, play, {"university"}, *v.actors, parse_formula("killed")));
}

TEST(Minimal, Errors) {
  const Game g = tarasoff_game();
  const Formula k = parse_formula("killed");
  EXPECT_THROW(check_minimal(5, g, 0, {}, Coalition{}, k), BadParams);
  EXPECT_THROW(check_minimal(4, g, 0, {}, Coalition{}, k), BadParams);
  EXPECT_THROW(check_minimal(2, g, 0, {}, std::nullopt, k), BadParams);
  EXPECT_THROW(check_minimal(1, g, 0, {"nobody"}, Coalition{}, k), UnknownAgent);
  EXPECT_THROW(check_minimal(4, g, 0, {"parents"}, std::nullopt, k, 10), ResourceLimit);
}

TEST(Property, DirectCheckAgreesWithExpansionAndDefinition) {
  std::mt19937_64 rng(606);
  int trues[5] = {0, 0, 0, 0, 0};
  for (int round = 0; round < 150; ++round) {
    const GameData data = oracle::random_game(rng, {3, 3, 2, 2, 2});
    const Game g = Game::from_data(data);
    const oracle::NaiveModel m(data);
    const Coalition u = g.agent_set();
    const Formula phi = oracle::random_formula(rng, {"p", "q"}, u, 1);
    const std::size_t play = rng() % g.plays().size();
    const Coalition c = oracle::random_coalition(rng, u);
    const Coalition d = oracle::random_coalition(rng, u);
    for (int kind = 1; kind <= 4; ++kind) {
      const std::optional<Coalition> actors =
          kind == 4 ? std::nullopt : std::optional<Coalition>(d);
      const bool direct = check_minimal(kind, g, play, c, actors, phi);
      const Formula e = expand_minimality(kind, c, actors, phi, u);
      ASSERT_EQ(direct, holds(g, play, e).holds) << "kind " << kind;
      ASSERT_EQ(direct, oracle::minimal(m, kind, play, c, actors, phi, u));
      trues[kind] += direct;
      if (kind == 3 && direct) {
        EXPECT_TRUE(check_minimal(1, g, play, c, d, phi));
      }
      if (kind == 4 && direct) {
        const MinimalVerdict v = check_minimal_verdict(4, g, play, c, std::nullopt, phi);
        ASSERT_TRUE(v.actors.has_value());
        EXPECT_TRUE(check_minimal(3, g, play, c, *v.actors, phi));
      }
    }
  }
  // The sample must exercise the true branch of every kind.
  for (int kind = 1; kind <= 4; ++kind) EXPECT_GT(trues[kind], 0) << kind;
}

}  // namespace
}  // namespace dtw
