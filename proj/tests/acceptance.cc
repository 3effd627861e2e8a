// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "corpus.h"
#include "dtw/deduction.h"
#include "dtw/error.h"
#include "dtw/expand.h"
#include "dtw/game.h"
#include "dtw/lemmas.h"
#include "dtw/minimality.h"
#include "dtw/proof.h"
#include "dtw/schema.h"
#include "dtw/search.h"
#include "dtw/semantics.h"
#include "dtw/syntax.h"
#include "mutations.h"
#include "oracles.h"

namespace {

using namespace dtw;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool report(int id, const char* title, double limit_s,
            const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double t = seconds_since(t0);
  const bool in_time = t < limit_s;
  const bool pass = o.ok && in_time;
  std::printf("%s criterion %d: %s (%.2f s, limit %.0f s)%s%s\n",
              pass ? "PASS" : "FAIL", id, title, t, limit_s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  if (!in_time) std::printf("     over the time limit\n");
  std::fflush(stdout);
  return pass;
}

SearchBounds fuzz_bounds() {
  SearchBounds b;
  b.max_agents = 3;
  b.max_initial = 3;
  b.max_actions = 2;
  b.max_outcomes = 2;
  b.max_props = 3;
  b.mode = SearchBounds::Mode::kRandom;
  b.seed = 2026;
  b.iterations = 1000;
  b.games = 200;
  return b;
}

Outcome tarasoff() {
  const Game g = tarasoff_game();
  const std::size_t play = g.find_play("Oct | poddar=1,parents=1,university=0 | dead");
  const Verdict a = holds(g, play, parse_formula("B[university][parents] killed"));
  const Verdict b = holds(g, play, parse_formula("B[parents][parents] killed"));
  const bool witness_ok = a.witness && a.witness->to_string() == "parents=0";
  Outcome o;
  o.ok = a.holds && witness_ok && !b.holds;
  o.detail = std::string("B[university][parents] killed = ") +
             (a.holds ? "true" : "false") + " witness " +
             (a.witness ? a.witness->to_string() : "none") +
             ", B[parents][parents] killed = " + (b.holds ? "true" : "false");
  return o;
}

Outcome axiom_soundness() {
  Outcome o;
  int clean = 0;
  for (Schema s : kAxioms) {
    const auto cx = soundness_fuzz(s, fuzz_bounds());
    if (cx) {
      o.ok = false;
      o.detail += std::string(schema_name(s)) + " refuted by " + render(cx->instance) + "; ";
    } else {
      ++clean;
    }
  }
  const auto joint = soundness_fuzz(Schema::kJointResponsibilityUnrestricted, fuzz_bounds());
  if (!joint) {
    o.ok = false;
    o.detail += "unrestricted joint responsibility found no counterexample; ";
  }
  o.detail += std::to_string(clean) + "/10 axiom schemas clean over 1000 instances x 200 games";
  if (joint) {
    o.detail += ", unrestricted joint responsibility refuted at index " +
                std::to_string(joint->index);
  }
  return o;
}

Outcome derived_lemmas() {
  Outcome o;
  for (Schema s : {Schema::kLemma2, Schema::kLemma3}) {
    const auto cx = soundness_fuzz(s, fuzz_bounds());
    if (cx) {
      o.ok = false;
      o.detail += std::string(schema_name(s)) + " refuted by " + render(cx->instance) + "; ";
    }
  }
  if (o.ok) o.detail = "Lemma2 and Lemma3 valid on every sampled game";
  return o;
}

Outcome proof_checker() {
  Outcome o;
  const auto bundle = bundled_scripts();
  ProofLibrary lib;
  std::size_t accepted = 0;
  for (const auto& b : bundle) {
    const ProofCheck c = check_and_register(b.script, lib);
    if (c.accepted) {
      ++accepted;
    } else {
      o.ok = false;
      o.detail += b.file_name + " rejected: " + c.message + "; ";
    }
  }
  std::size_t mutants = 0;
  std::size_t killed = 0;
  for (const auto& b : bundle) {
    for (const auto& m : mutations::all_mutants(b.script)) {
      ++mutants;
      if (!check_proof(m.script, lib).accepted) ++killed;
    }
  }
  if (killed != mutants) o.ok = false;

  ScriptBuilder pb({parse_formula("p"), parse_formula("p -> q"), parse_formula("q -> r")});
  pb.mp(pb.mp(pb.hyp(0), pb.hyp(1)), pb.hyp(2));
  const ProofScript premises = pb.finish();
  ProofScript chain = premises;
  bool pipeline = check_proof(chain, {}).accepted;
  while (pipeline && !chain.hypotheses.empty()) {
    chain = apply_deduction_theorem(chain);
    pipeline = check_proof(chain, {}).accepted;
  }
  const ProofScript lifted = lemma1_script({"a"}, premises);
  pipeline = pipeline && check_proof(lifted, {}).accepted &&
             *lifted.goal == parse_formula("K[a]r");
  if (!pipeline) o.ok = false;

  o.detail += std::to_string(accepted) + "/" + std::to_string(bundle.size()) +
              " scripts accepted, " + std::to_string(killed) + "/" +
              std::to_string(mutants) + " mutants rejected, deduction pipeline " +
              (pipeline ? "accepted" : "rejected");
  return o;
}

SearchBounds countermodel_bounds() {
  SearchBounds b;
  b.max_agents = 2;
  b.max_initial = 2;
  b.max_actions = 2;
  b.max_outcomes = 2;
  b.max_props = 1;
  return b;
}

Outcome countermodel(const char* text, bool expect_found) {
  const Formula f = parse_formula(text);
  const auto cm = countermodel_search(f, countermodel_bounds());
  Outcome o;
  if (expect_found) {
    o.ok = cm.has_value() && !holds(cm->game, cm->play, f).holds;
    o.detail = cm ? "countermodel at index " + std::to_string(cm->index) +
                        ", play " + cm->game.describe(cm->play)
                  : "no countermodel";
  } else {
    o.ok = !cm.has_value();
    o.detail = cm ? "unexpected countermodel" : "none under exhaustive search";
  }
  o.detail = std::string(text) + ": " + o.detail;
  return o;
}

Outcome minimality() {
  std::mt19937_64 rng(606060);
  std::size_t checks = 0;
  std::size_t disagreements = 0;
  for (int round = 0; round < 100; ++round) {
    const GameData data = oracle::random_game(rng, {3, 3, 2, 2, 2});
    const Game g = Game::from_data(data);
    const Coalition u = g.agent_set();
    Evaluator ev(g);
    for (int sample = 0; sample < 3; ++sample) {
      const Formula phi = oracle::random_formula(rng, {"p", "q"}, u, 2);
      const Coalition c = oracle::random_coalition(rng, u);
      const Coalition d = oracle::random_coalition(rng, u);
      for (int kind = 1; kind <= 4; ++kind) {
        const std::optional<Coalition> actors =
            kind == 4 ? std::nullopt : std::optional<Coalition>(d);
        const PlaySet ext = ev.extension(expand_minimality(kind, c, actors, phi, u));
        for (std::size_t q = 0; q < g.plays().size(); ++q) {
          ++checks;
          if (check_minimal(kind, g, q, c, actors, phi) != ext.test(q)) ++disagreements;
        }
      }
    }
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements in " +
                                  std::to_string(checks) + " checks on 100 games"};
}

Outcome parser() {
  std::mt19937_64 rng(7);
  const Coalition u{"a", "b", "c", "d"};
  std::size_t round_trips = 0;
  for (int i = 0; i < 1000; ++i) {
    const Formula f = oracle::random_formula(rng, {"p", "q", "r"}, u, 1 + i % 8);
    if (parse_formula(render(f)) == f) ++round_trips;
  }
  std::size_t positioned = 0;
  for (const auto& item : corpus::malformed()) {
    try {
      parse_formula(item.text);
    } catch (const SyntaxError& e) {
      if (e.position() >= 1 && e.position() <= item.text.size() + 1) ++positioned;
    }
  }
  const std::size_t corpus_size = corpus::malformed().size();
  return {round_trips == 1000 && positioned == corpus_size,
          std::to_string(round_trips) + "/1000 round trips, " +
              std::to_string(positioned) + "/" + std::to_string(corpus_size) +
              " malformed inputs rejected with a position"};
}

}  // namespace

int main() {
  bool all = true;
  all &= report(1, "Tarasoff reproduction", 1, tarasoff);
  all &= report(2, "axiom soundness", 60, axiom_soundness);
  all &= report(3, "derived-lemma validity", 60, derived_lemmas);
  all &= report(4, "proof checker", 30, proof_checker);
  all &= report(5, "countermodel search", 60,
                [] { return countermodel("K[a,b]p -> K[a]p", true); });
  all &= report(5, "countermodel search", 60,
                [] { return countermodel("B[a][b]p -> K[a]p", true); });
  all &= report(5, "countermodel search", 60,
                [] { return countermodel("K[a]p -> K[a,b]p", false); });
  all &= report(6, "minimality oracle equivalence", 60, minimality);
  all &= report(7, "parser round trip", 60, parser);
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
