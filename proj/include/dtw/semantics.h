#ifndef DTW_SEMANTICS_H_
#define DTW_SEMANTICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtw/formula.h"
#include "dtw/game.h"

namespace dtw {

// Outcome of a model-checking query.
//   witness:    for a true B^D_C f, the first preventing profile s of D.
//   refutation: for a false K_C f, the first play alpha ~_C alpha' refuting
//               f; for a failed validity query, the first false play.
struct Verdict {
  bool holds = false;
  std::optional<ActionProfile> witness;
  std::optional<std::size_t> refutation;
};

// Computes the set of plays satisfying a formula in one bottom-up pass.
// Propositions missing from the valuation are false everywhere. Throws
// UnknownAgent when a coalition names an agent outside the game.
//
// Blame costs O(|P| + classes * |actions|^|D|) per node. Results are shared
// between identical subformula nodes within one extension() call only.
class Evaluator {
 public:
  explicit Evaluator(const Game& game) : game_(game) {}

  PlaySet extension(const Formula& f);

  // Plays satisfying B^D_C f, given the plays satisfying f.
  PlaySet blame_extension(const Coalition& knowers, const Coalition& actors,
                          const PlaySet& phi);
  // The first s in Delta^D (lexicographic over sorted agents of D, then
  // declared action order) such that every play matching (alpha ~_C, s)
  // falsifies f. Ignores whether f holds at `play` itself.
  std::optional<ActionProfile> preventing_profile(const Coalition& knowers,
                                                  const Coalition& actors,
                                                  const PlaySet& phi,
                                                  std::size_t play);
  // Class id of each initial state under ~_C.
  const std::vector<std::size_t>& classes(const Coalition& c);

  const Game& game() const { return game_; }

 private:
  struct BlameTable {
    std::vector<std::size_t> state_class;
    std::size_t profiles = 0;
    std::vector<char> spoiled;  // class * profiles + s: some f-play matches
  };
  BlameTable blame_table(const Coalition& knowers, const Coalition& actors,
                         const PlaySet& phi);
  PlaySet eval(const Formula& f);

  const Game& game_;
  std::unordered_map<std::string, std::vector<std::size_t>> class_cache_;
  std::unordered_map<const void*, PlaySet> memo_;
};

// (alpha, delta, omega) |= f for the play with index `play`.
Verdict holds(const Game& game, std::size_t play, const Formula& f);

// f holds at every play of the game.
Verdict valid_in_game(const Game& game, const Formula& f);

// Propositions of f without a valuation entry in the game (treated as false).
std::vector<std::string> unknown_propositions(const Game& game,
                                              const Formula& f);

}  // namespace dtw

#endif  // DTW_SEMANTICS_H_
