#include <random>
#include <string>

#include <gtest/gtest.h>

#include "dtw/error.h"
#include "dtw/game.h"
#include "dtw/semantics.h"
#include "dtw/syntax.h"
#include "oracles.h"

namespace dtw {
namespace {

const char* kDeadPlay = "Oct | poddar=1,parents=1,university=0 | dead";

TEST(Holds, UniversityBlamesParents) {
  const Game g = tarasoff_game();
  const Verdict v = holds(g, g.find_play(kDeadPlay),
                          parse_formula("B[university][parents] killed"));
  EXPECT_TRUE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->to_string(), "parents=0");
  EXPECT_FALSE(v.refutation.has_value());
}

TEST(Holds, ParentsAreNotBlameworthy) {
  const Game g = tarasoff_game();
  const std::size_t play = g.find_play(kDeadPlay);
  const Verdict v = holds(g, play, parse_formula("B[parents][parents] killed"));
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(v.witness.has_value());
  // Neither vacation month is safe for someone who cannot tell the months apart.
  const oracle::NaiveModel m(g.data());
  const Formula killed = parse_formula("killed");
  for (const char* month : {"0", "1"}) {
    bool some_death = false;
    for (std::size_t q : m.matching(play, {"parents"}, {{"parents", month}})) {
      some_death = some_death || m.sat(q, killed);
    }
    EXPECT_TRUE(some_death) << "parents=" << month;
  }
}

TEST(Holds, NobodyActingPreventsNothing) {
  const Game g = tarasoff_game();
  for (std::size_t i = 0; i < g.plays().size(); ++i) {
    for (const char* f : {"B[][] killed", "B[university][] killed",
                          "B[parents,poddar,university][] ~killed"}) {
      EXPECT_FALSE(holds(g, i, parse_formula(f)).holds) << f;
    }
  }
}

TEST(Holds, KnowledgeRefutation) {
  const Game g = tarasoff_game();
  const std::size_t play = g.find_play(kDeadPlay);
  const Verdict v = holds(g, play, parse_formula("K[parents] killed"));
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.refutation.has_value());
  EXPECT_EQ(*v.refutation, 0u);
}

TEST(Holds, UnknownAgent) {
  const Game g = tarasoff_game();
  EXPECT_THROW(holds(g, 0, parse_formula("K[nobody] killed")), UnknownAgent);
  EXPECT_THROW(holds(g, 0, parse_formula("B[parents][nobody] killed")), UnknownAgent);
}

TEST(Holds, MissingPropositionIsFalse) {
  const Game g = tarasoff_game();
  EXPECT_FALSE(holds(g, 0, parse_formula("raining")).holds);
  EXPECT_EQ(unknown_propositions(g, parse_formula("raining -> killed")),
            std::vector<std::string>{"raining"});
}

TEST(Valid, TruthInstance) {
  const Game g = tarasoff_game();
  EXPECT_TRUE(valid_in_game(g, parse_formula("K[parents] killed -> killed")).holds);
}

TEST(Valid, KilledIsRefutedByFirstAlivePlay) {
  const Game g = tarasoff_game();
  const Verdict v = valid_in_game(g, parse_formula("killed"));
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.refutation.has_value());
  EXPECT_EQ(*v.refutation, 0u);
  EXPECT_EQ(g.describe(*v.refutation), "Oct | poddar=0,parents=0,university=0 | alive");
}

struct Sample {
  GameData data;
  Game game;
};

Sample sample(std::mt19937_64& rng) {
  GameData d = oracle::random_game(rng, {3, 3, 2, 2, 3});
  Game g = Game::from_data(d);
  return {std::move(d), std::move(g)};
}

const std::vector<std::string> kProps{"p", "q", "r"};

TEST(Property, AgreesWithNaiveEvaluator) {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 300; ++round) {
    const Sample s = sample(rng);
    const oracle::NaiveModel m(s.data);
    const Formula f = oracle::random_formula(rng, kProps, s.game.agent_set(), 4);
    Evaluator ev(s.game);
    const PlaySet ext = ev.extension(f);
    for (std::size_t q = 0; q < s.game.plays().size(); ++q) {
      ASSERT_EQ(ext.test(q), m.sat(q, f)) << render(f) << " at play " << q;
      ASSERT_EQ(holds(s.game, q, f).holds, m.sat(q, f));
    }
  }
}

TEST(Property, BlameWitnessIsFirstAndValid) {
  std::mt19937_64 rng(2);
  int witnessed = 0;
  for (int round = 0; round < 300; ++round) {
    const Sample s = sample(rng);
    const oracle::NaiveModel m(s.data);
    const Coalition u = s.game.agent_set();
    const Formula phi = oracle::random_formula(rng, kProps, u, 2);
    const Coalition c = oracle::random_coalition(rng, u);
    const Coalition d = oracle::random_coalition(rng, u);
    const Formula b = Formula::blame(c, d, phi);
    for (std::size_t q = 0; q < s.game.plays().size(); ++q) {
      const Verdict v = holds(s.game, q, b);
      ASSERT_EQ(v.holds, m.sat(q, b));
      if (!v.holds) {
        EXPECT_FALSE(v.witness.has_value());
        continue;
      }
      ++witnessed;
      // Truth for blame.
      EXPECT_TRUE(holds(s.game, q, phi).holds);
      ASSERT_TRUE(v.witness.has_value());
      EXPECT_EQ(v.witness->assignment(), *m.first_preventer(q, c, d, phi));
      EXPECT_EQ(v.witness->domain(), d);
      for (std::size_t r : s.game.matching_plays(s.data.plays[q].initial, c, *v.witness)) {
        EXPECT_FALSE(m.sat(r, phi));
      }
    }
  }
  EXPECT_GT(witnessed, 50);
}

TEST(Property, BlameIsMonotone) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    const Sample s = sample(rng);
    const Coalition u = s.game.agent_set();
    const Formula phi = oracle::random_formula(rng, kProps, u, 2);
    const Coalition c = oracle::random_coalition(rng, u);
    const Coalition d = oracle::random_coalition(rng, u);
    const Coalition e = c.unite(oracle::random_coalition(rng, u));
    const Coalition f = d.unite(oracle::random_coalition(rng, u));
    Evaluator ev(s.game);
    const PlaySet small = ev.extension(Formula::blame(c, d, phi));
    const PlaySet big = ev.extension(Formula::blame(e, f, phi));
    EXPECT_TRUE(small.is_subset_of(big));
  }
}

TEST(Property, IntrospectionValidities) {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 200; ++round) {
    const Sample s = sample(rng);
    const Coalition c = oracle::random_coalition(rng, s.game.agent_set());
    const std::string k = "K" + c.to_string();
    const std::string p = "(" + render(oracle::random_formula(rng, kProps, s.game.agent_set(), 2)) + ")";
    EXPECT_TRUE(valid_in_game(s.game, parse_formula("~" + k + p + " -> " + k + "~" + k + p)).holds);
    EXPECT_TRUE(valid_in_game(s.game, parse_formula(k + p + " -> " + k + k + p)).holds);
  }
}

TEST(Property, Deterministic) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    const Sample s = sample(rng);
    const Formula f = oracle::random_formula(rng, kProps, s.game.agent_set(), 3);
    for (std::size_t q = 0; q < s.game.plays().size(); ++q) {
      const Verdict a = holds(s.game, q, f);
      const Verdict b = holds(s.game, q, f);
      EXPECT_EQ(a.holds, b.holds);
      EXPECT_EQ(a.witness, b.witness);
      EXPECT_EQ(a.refutation, b.refutation);
    }
  }
}

}  // namespace
}  // namespace dtw
