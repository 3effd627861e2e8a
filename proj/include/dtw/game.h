#ifndef DTW_GAME_H_
#define DTW_GAME_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "dtw/coalition.h"

namespace dtw {

// A set of plays, indexed by position in Game::plays().
using PlaySet = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::uint64_t kDefaultSerialityBudget = 10'000'000;

// Name-level description of a game, exactly as written in a game file. It
// may be invalid; Game::from_data() is the only way to get a checked model.
struct PlayData {
  std::string initial;
  std::vector<std::pair<Agent, std::string>> profile;
  std::string outcome;
};

struct GameData {
  std::vector<Agent> agents;
  std::vector<std::string> initial;
  // Partition blocks per agent; agents without an entry, and states not
  // covered by any block, are alone in their block.
  std::vector<std::pair<Agent, std::vector<std::vector<std::string>>>> indist;
  std::vector<std::string> actions;
  std::vector<std::string> outcomes;
  std::vector<PlayData> plays;
  // Proposition -> 0-based indices into `plays`.
  std::vector<std::pair<std::string, std::vector<std::size_t>>> valuation;
};

// Every violated well-formedness condition, sorted: partitions, dangling ids,
// non-total profiles, duplicate plays, valuations outside the plays, and
// seriality (each initial state and complete profile has some play).
// Throws ResourceLimit when |I| * |actions|^|agents| exceeds `max_checks`.
std::vector<std::string> validate_game(
    const GameData& data, std::uint64_t max_checks = kDefaultSerialityBudget);

// A partial assignment of actions to a coalition's agents.
class ActionProfile {
 public:
  ActionProfile() = default;
  explicit ActionProfile(std::map<Agent, std::string> assignment)
      : assignment_(std::move(assignment)) {}

  Coalition domain() const;
  const std::map<Agent, std::string>& assignment() const { return assignment_; }
  // "parents=0,poddar=1" in agent order.
  std::string to_string() const;

  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;

 private:
  std::map<Agent, std::string> assignment_;
};

// One element of the play relation, by index into the game's name tables.
struct Play {
  std::size_t initial;
  std::vector<std::size_t> actions;  // one per agent, declaration order
  std::size_t outcome;

  friend bool operator==(const Play&, const Play&) = default;
};

// A validated, immutable game.
class Game {
 public:
  // Throws ValidationError listing every violation.
  static Game from_data(GameData data,
                        std::uint64_t max_checks = kDefaultSerialityBudget);

  const GameData& data() const { return data_; }
  const std::vector<Agent>& agents() const { return data_.agents; }
  const std::vector<std::string>& states() const { return data_.initial; }
  const std::vector<std::string>& actions() const { return data_.actions; }
  const std::vector<std::string>& outcomes() const { return data_.outcomes; }
  const std::vector<Play>& plays() const { return plays_; }
  Coalition agent_set() const { return Coalition(data_.agents); }

  std::size_t agent_index(std::string_view agent) const;  // UnknownAgent
  std::size_t state_index(std::string_view state) const;  // UnknownState
  // Indices of the coalition's members, in the coalition's sorted order.
  std::vector<std::size_t> agent_indices(const Coalition& c) const;

  // Block id of `state` in the partition of agent `agent`.
  std::size_t block(std::size_t agent, std::size_t state) const {
    return blocks_[agent][state];
  }

  // Plays where the proposition is true; null if it has no valuation entry.
  const PlaySet* valuation(std::string_view prop) const;

  // a ~_C b: indistinguishable for every member of C (always true for {}).
  bool indist_state(const Coalition& c, std::string_view a,
                    std::string_view b) const;
  bool indist_state(const std::vector<std::size_t>& agents, std::size_t a,
                    std::size_t b) const;

  // Plays (a', d', o') with alpha ~_C a' and d' agreeing with `s` on its
  // domain, in declaration order.
  std::vector<std::size_t> matching_plays(std::string_view alpha,
                                          const Coalition& c,
                                          const ActionProfile& s) const;

  ActionProfile profile_of(std::size_t play) const;
  // "Oct | poddar=1,parents=1,university=0 | dead"
  std::string describe(std::size_t play) const;
  // Inverse of describe(); the profile must be complete. Throws Error when
  // the text is malformed or names no play.
  std::size_t find_play(std::string_view spec) const;

 private:
  Game() = default;

  GameData data_;
  std::unordered_map<std::string, std::size_t> agent_ids_;
  std::unordered_map<std::string, std::size_t> state_ids_;
  std::unordered_map<std::string, std::size_t> action_ids_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<Play> plays_;
  std::unordered_map<std::string, PlaySet> valuation_;
};

// Line-oriented text format:
//
//   agents: poddar parents university
//   initial: Oct Nov
//   indist parents: {Oct Nov}
//   actions: 0 1
//   outcomes: alive dead
//   play: Oct poddar=1 parents=1 university=0 dead
//   prop killed: 1 3 5        # 1-based play indices
//
// `#` starts a comment. parse_game_data() checks syntax only (SyntaxError);
// load_game() also validates (ValidationError).
GameData parse_game_data(std::string_view text);
Game load_game(std::string_view text,
               std::uint64_t max_checks = kDefaultSerialityBudget);
std::string render_game(const GameData& data);

// The Tarasoff case: Poddar attacks (1) or not (0); the parents vacation in
// October (0) or November (1); the peak month is the initial state. The
// attack kills iff the vacation misses the peak month. The parents cannot
// tell the months apart. The three-agent version adds `university`, which
// can, and whose action never matters.
std::string_view tarasoff_text();
std::string_view tarasoff2_text();
Game tarasoff_game();
Game tarasoff2_game();

}  // namespace dtw

#endif  // DTW_GAME_H_
