#ifndef DTW_SEARCH_H_
#define DTW_SEARCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dtw/coalition.h"
#include "dtw/formula.h"
#include "dtw/game.h"
#include "dtw/schema.h"

namespace dtw {

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

struct SearchBounds {
  enum class Mode { kExhaustive, kRandom };

  int max_agents = 2;
  int max_initial = 2;
  int max_actions = 2;
  int max_outcomes = 2;
  int max_props = 1;
  Mode mode = Mode::kExhaustive;
  std::uint64_t seed = 0;
  // Random games for countermodel search; instantiations for fuzzing.
  std::size_t iterations = 1000;
  // Sampled games per fuzzing run in random mode.
  std::size_t games = 200;
  // Upper bound on games enumerated in exhaustive mode.
  std::uint64_t budget = kDefaultSearchBudget;
  unsigned workers = 1;

  // Throws BadParams unless every bound is >= 1.
  void check() const;
};

// Small games up to isomorphism of outcome names. Two plays with the same
// initial state, profile and valuation satisfy the same formulas, so a game
// is fixed by the partitions and, for each (initial state, complete
// profile), the nonempty set of valuations its plays carry (at most
// max_outcomes of them).
//
// Exhaustive order: agent count, then state count, then action count
// (ascending); within a shape, the agents' partitions (restricted growth
// strings, first agent most significant), then the valuation set of each
// (state, profile) pair, first pair most significant.
class GameSpace {
 public:
  // Games use agent_pool[0..n) for n in [min_agents, max_agents].
  GameSpace(std::vector<Agent> agent_pool, int min_agents,
            std::vector<std::string> props, const SearchBounds& bounds);

  // Number of games in exhaustive order; saturates at UINT64_MAX.
  std::uint64_t size() const { return total_; }
  Game at(std::uint64_t index) const;
  Game sample(std::mt19937_64& rng) const;

 private:
  struct Shape {
    int agents;
    int states;
    int actions;
    std::uint64_t pairs;
    std::uint64_t count;
  };
  Game build(const Shape& shape, const std::vector<std::size_t>& partitions,
             const std::vector<std::vector<std::uint32_t>>& choices) const;

  std::vector<Agent> pool_;
  std::vector<std::string> props_;
  SearchBounds bounds_;
  std::vector<Shape> shapes_;
  std::uint64_t total_ = 0;
  std::uint64_t option_count_ = 0;
  std::vector<std::vector<std::uint32_t>> options_;
};

// Per-run deterministic generator for item `index` of stream `tag`.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t tag,
                         std::uint64_t index);

// Random formula of depth <= max_depth over the given propositions, with
// coalitions drawn from `universe`.
Formula random_formula(std::mt19937_64& rng,
                       const std::vector<std::string>& props,
                       const Coalition& universe, int max_depth);

// Random metavariable assignment respecting the schema's side conditions.
// Formula variables get depth <= max_depth formulas.
Substitution random_substitution(Schema s, std::mt19937_64& rng,
                                 const std::vector<std::string>& props,
                                 const Coalition& universe, int max_depth = 3);

// Restricts every coalition, including those inside formulas, to `agents`.
// Inclusions and disjointness survive, so side conditions are preserved.
Formula relativize(const Formula& f, const Coalition& agents);
Substitution relativize(const Substitution& sub, const Coalition& agents);

struct Countermodel {
  Game game;
  std::size_t play;
  std::uint64_t index;  // position in the search order
};

// First game/play (search order, then declaration order) falsifying f.
// Games contain f's agents plus fillers x1, x2, ... up to max_agents, and
// valuations over f's propositions. Throws BadParams when f needs more
// agents or propositions than the bounds allow, ResourceLimit when an
// exhaustive space exceeds the budget.
std::optional<Countermodel> countermodel_search(const Formula& f,
                                                const SearchBounds& bounds);

struct FuzzCounterexample {
  Game game;
  std::size_t play;
  Substitution substitution;
  Formula instance;
  std::uint64_t index;
};

// Checks random instances of `schema` for validity on small games. Agents
// are a, b, c, ... and propositions p, q, r, ...; each instance is
// relativized to the agents of the game it is checked on. Games are
// enumerated (exhaustive) or sampled (random, bounds.games of them);
// bounds.iterations instances are drawn from bounds.seed. Returns the
// first counterexample in (game, instance) order.
std::optional<FuzzCounterexample> soundness_fuzz(Schema schema,
                                                 const SearchBounds& bounds);

// Agent and proposition names used by soundness_fuzz.
std::vector<Agent> fuzz_agents(int n);
std::vector<std::string> fuzz_props(int n);

}  // namespace dtw

#endif  // DTW_SEARCH_H_
