#ifndef DTW_TESTS_ORACLES_H_
#define DTW_TESTS_ORACLES_H_

// Reference implementations used to cross-check the library. They work on
// the name-level GameData and follow the satisfaction clauses play by play,
// sharing no code with the evaluator, the search or the expander.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dtw/coalition.h"
#include "dtw/formula.h"
#include "dtw/game.h"

namespace oracle {

class NaiveModel {
 public:
  explicit NaiveModel(const dtw::GameData& g);

  bool sat(std::size_t play, const dtw::Formula& f) const;
  bool indist(const dtw::Coalition& c, const std::string& a,
              const std::string& b) const;
  // Plays (a', d', o') with a ~_C a' whose profile agrees with `s`.
  std::vector<std::size_t> matching(std::size_t play, const dtw::Coalition& c,
                                    const std::map<std::string, std::string>& s)
      const;
  // Every profile of D in lexicographic order (sorted agents, declared
  // action order).
  std::vector<std::map<std::string, std::string>> profiles(
      const dtw::Coalition& d) const;
  // First preventing profile, as the evaluator should report it.
  std::optional<std::map<std::string, std::string>> first_preventer(
      std::size_t play, const dtw::Coalition& c, const dtw::Coalition& d,
      const dtw::Formula& f) const;

  std::size_t plays() const { return g_.plays.size(); }

 private:
  std::string action_of(std::size_t play, const std::string& agent) const;

  const dtw::GameData& g_;
  std::map<std::string, std::map<std::string, std::size_t>> block_;
  std::vector<std::vector<bool>> truth_;  // per proposition index, per play
  std::map<std::string, std::size_t> prop_index_;
};

// Literal minimality definitions, evaluated by NaiveModel.
bool minimal(const NaiveModel& m, int kind, std::size_t play,
             const dtw::Coalition& c, const std::optional<dtw::Coalition>& d,
             const dtw::Formula& phi, const dtw::Coalition& universe);

// Random game data: agents a, b, ...; states s1..; actions 0..; outcomes
// o1..; every (state, profile) gets 1..max_outcomes distinct outcomes.
struct GameShape {
  int agents = 2;
  int states = 2;
  int actions = 2;
  int outcomes = 2;
  int props = 2;
};
dtw::GameData random_game(std::mt19937_64& rng, const GameShape& max);

// Replaces the valuation by random play sets for the given propositions.
void assign_props(std::mt19937_64& rng, dtw::GameData& g,
                  const std::set<std::string>& props);

// Depth-bounded random formula over props and agents of `universe`, built
// from the core constructors only.
dtw::Formula random_formula(std::mt19937_64& rng,
                            const std::vector<std::string>& props,
                            const dtw::Coalition& universe, int depth);

dtw::Coalition random_coalition(std::mt19937_64& rng,
                                const dtw::Coalition& universe);

// Number of distinct complete-profile outcomes per (state, profile) pair,
// keyed "state|a=x,b=y".
std::map<std::string, std::size_t> outcome_counts(const dtw::GameData& g);

// Counts of the expanded minimality formula, by direct subset counting:
// the number of B-leaves and the number of top-level disjuncts of kind 4.
std::uint64_t expansion_blame_leaves(int kind, std::size_t c, std::size_t d,
                                     std::size_t u);

// Number of tree nodes of a formula, counted recursively.
std::uint64_t tree_nodes(const dtw::Formula& f);

bool core_only(const dtw::Formula& f);

}  // namespace oracle

#endif  // DTW_TESTS_ORACLES_H_
