#ifndef DTW_MINIMALITY_H_
#define DTW_MINIMALITY_H_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "dtw/coalition.h"
#include "dtw/formula.h"
#include "dtw/game.h"

namespace dtw {

inline constexpr std::uint64_t kDefaultMinimalityBudget = 1'000'000;

struct MinimalVerdict {
  bool holds = false;
  // Kind 4 only: the first actor coalition D (subset-mask order over the
  // game's sorted agents) for which the kind-3 condition holds.
  std::optional<Coalition> actors;
};

// Decides the minimal-blame notions of expand_minimality() at one play by
// iterating subcoalitions of the game's agents directly. Throws BadParams
// on a bad kind/actors combination, UnknownAgent, and ResourceLimit when
// more than `budget` blame checks would be needed.
MinimalVerdict check_minimal_verdict(
    int kind, const Game& game, std::size_t play, const Coalition& knowers,
    const std::optional<Coalition>& actors, const Formula& phi,
    std::uint64_t budget = kDefaultMinimalityBudget);

bool check_minimal(int kind, const Game& game, std::size_t play,
                   const Coalition& knowers,
                   const std::optional<Coalition>& actors, const Formula& phi,
                   std::uint64_t budget = kDefaultMinimalityBudget);

}  // namespace dtw

#endif  // DTW_MINIMALITY_H_
