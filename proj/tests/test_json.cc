#include <random>

#include <gtest/gtest.h>

#include "dtw/error.h"
#include "dtw/json.h"
#include "dtw/lemmas.h"
#include "dtw/search.h"
#include "dtw/semantics.h"
#include "dtw/syntax.h"
#include "oracles.h"

namespace dtw {
namespace {

TEST(Json, VerdictWithWitness) {
  const Game g = tarasoff_game();
  const std::size_t play = g.find_play("Oct | poddar=1,parents=1,university=0 | dead");
  const Verdict v = holds(g, play, parse_formula("B[university][parents] killed"));
  const Json j = verdict_to_json(v, g);
  EXPECT_EQ(j.dump(), R"({"holds":true,"witness":{"parents":"0"},"refutation":null})");
  const Verdict back = verdict_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.holds, v.holds);
  EXPECT_EQ(back.witness, v.witness);
  EXPECT_EQ(back.refutation, v.refutation);
}

TEST(Json, VerdictWithRefutation) {
  const Game g = tarasoff_game();
  const Verdict v = valid_in_game(g, parse_formula("killed"));
  const Json j = verdict_to_json(v, g);
  EXPECT_EQ(j["refutation"]["play"], 1);
  EXPECT_EQ(j["refutation"]["description"],
            "Oct | poddar=0,parents=0,university=0 | alive");
  const Verdict back = verdict_from_json(j);
  EXPECT_EQ(back.refutation, v.refutation);
  EXPECT_FALSE(back.holds);
}

TEST(Json, GameRoundTrip) {
  std::mt19937_64 rng(8);
  std::vector<GameData> games{tarasoff_game().data(), tarasoff2_game().data()};
  for (int i = 0; i < 30; ++i) games.push_back(oracle::random_game(rng, {3, 3, 2, 2, 2}));
  for (const auto& d : games) {
    const Json j = game_to_json(d);
    const GameData back = game_from_json(Json::parse(j.dump()));
    EXPECT_EQ(render_game(back), render_game(d));
    EXPECT_EQ(game_to_json(back), j);
  }
}

TEST(Json, ProofCheckRoundTrip) {
  ProofCheck rejected;
  rejected.line = 3;
  rejected.reason = RejectReason::kModusPonensMismatch;
  rejected.message = "line 4: mismatch";
  ProofCheck accepted;
  accepted.accepted = true;
  for (const ProofCheck& c : {rejected, accepted}) {
    const Json j = proof_check_to_json(c, 7);
    EXPECT_EQ(j["lines"], 7);
    const ProofCheck back = proof_check_from_json(j);
    EXPECT_EQ(back.accepted, c.accepted);
    EXPECT_EQ(back.line, c.line);
    EXPECT_EQ(back.reason, c.reason);
    EXPECT_EQ(back.message, c.message);
  }
  EXPECT_EQ(proof_check_to_json(rejected, 7)["line"], 4);
  EXPECT_EQ(proof_check_to_json(rejected, 7)["reason"], "mp-mismatch");
}

TEST(Json, SubstitutionRoundTrip) {
  for (Schema s : kAllSchemas) {
    for (std::uint64_t i = 0; i < 20; ++i) {
      std::mt19937_64 rng = make_rng(4, 1, i);
      const Substitution sub = random_substitution(s, rng, {"p", "q"}, {"a", "b", "c"});
      EXPECT_EQ(substitution_from_json(Json::parse(substitution_to_json(sub).dump())), sub);
    }
  }
}

TEST(Json, SearchReports) {
  EXPECT_EQ(countermodel_to_json(std::nullopt)["found"], false);
  SearchBounds b;
  const auto cm = countermodel_search(parse_formula("K[a,b]p -> K[a]p"), b);
  ASSERT_TRUE(cm.has_value());
  const Json j = countermodel_to_json(cm);
  EXPECT_EQ(j["found"], true);
  EXPECT_EQ(j["index"], cm->index);
  EXPECT_EQ(render_game(game_from_json(j["game"])), render_game(cm->game.data()));
  EXPECT_EQ(j["play"]["play"], cm->play + 1);
  EXPECT_EQ(fuzz_to_json(Schema::kTruthK, std::nullopt)["schema"], "Truth-K");
}

TEST(Json, MalformedInput) {
  EXPECT_THROW(verdict_from_json(Json::parse(R"({"holds": 3})")), Error);
  EXPECT_THROW(game_from_json(Json::parse("[]")), Error);
  EXPECT_THROW(proof_check_from_json(Json::parse(R"({"accepted": true})")), Error);
  EXPECT_THROW(substitution_from_json(Json::parse(R"({"phi": "p &"})")), Error);
}

}  // namespace
}  // namespace dtw
