#ifndef DTW_EXPAND_H_
#define DTW_EXPAND_H_

#include <cstddef>
#include <optional>

#include "dtw/coalition.h"
#include "dtw/formula.h"

namespace dtw {

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

// The four minimal-blame notions, written out in the core language:
//
//   [1]^D_C f = B^D_C f & ~OR_{E < C} B^D_E f
//   [2]^D_C f = B^D_C f & ~OR_{E < C} OR_{F <= U} B^F_E f
//   [3]^D_C f = B^D_C f & ~OR_{E <= U} OR_{F < D} B^F_E f & ~OR_{E < C} B^D_E f
//   [4]_C f   = OR_{D <= U} [3]^D_C f
//
// where < is proper inclusion (the empty set included) and U = universe.
// Big disjunctions are nested literally, in increasing subset-mask order
// over the sorted members; an empty disjunction is `false` and an empty
// conjunction is `~false`. Kind 4 takes no actors.
//
// Throws BadParams on a bad kind/actors combination, UnknownAgent when a
// coalition leaves the universe, UniverseTooLarge when the expanded tree
// would exceed `node_budget` nodes.
Formula expand_minimality(int kind, const Coalition& knowers,
                          const std::optional<Coalition>& actors,
                          const Formula& phi, const Coalition& universe,
                          std::size_t node_budget = kDefaultNodeBudget);

}  // namespace dtw

#endif  // DTW_EXPAND_H_
