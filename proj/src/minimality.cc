#include "dtw/minimality.h"

#include <string>

#include "dtw/error.h"
#include "dtw/semantics.h"

namespace dtw {
namespace {

class Checker {
 public:
  Checker(const Game& game, std::size_t play, const Formula& phi)
      : ev_(game), play_(play), phi_(ev_.extension(phi)),
        universe_(game.agent_set()) {}

  bool blame(const Coalition& c, const Coalition& d) {
    return phi_.test(play_) &&
           ev_.preventing_profile(c, d, phi_, play_).has_value();
  }

  // Some E < C has B^D_E.
  bool smaller_knowers(const Coalition& c, const Coalition& d) {
    return any_subset(c, true, [&](const Coalition& e) { return blame(e, d); });
  }

  bool kind1(const Coalition& c, const Coalition& d) {
    return blame(c, d) && !smaller_knowers(c, d);
  }

  bool kind2(const Coalition& c, const Coalition& d) {
    return blame(c, d) && !any_subset(c, true, [&](const Coalition& e) {
      return any_subset(universe_, false,
                        [&](const Coalition& f) { return blame(e, f); });
    });
  }

  bool kind3(const Coalition& c, const Coalition& d) {
    return blame(c, d) &&
           !any_subset(universe_, false, [&](const Coalition& e) {
             return any_subset(d, true,
                               [&](const Coalition& f) { return blame(e, f); });
           }) &&
           !smaller_knowers(c, d);
  }

  std::optional<Coalition> kind4(const Coalition& c) {
    std::optional<Coalition> found;
    any_subset(universe_, false, [&](const Coalition& d) {
      if (!kind3(c, d)) return false;
      found = d;
      return true;
    });
    return found;
  }

 private:
  template <typename Fn>
  static bool any_subset(const Coalition& base, bool proper, Fn&& fn) {
    const std::uint64_t full = std::uint64_t{1} << base.size();
    const std::uint64_t end = proper ? full - 1 : full;
    for (std::uint64_t mask = 0; mask < end; ++mask) {
      if (fn(base.subset(mask))) return true;
    }
    return false;
  }

  Evaluator ev_;
  std::size_t play_;
  PlaySet phi_;
  Coalition universe_;
};

}  // namespace

MinimalVerdict check_minimal_verdict(int kind, const Game& game,
                                     std::size_t play, const Coalition& knowers,
                                     const std::optional<Coalition>& actors,
                                     const Formula& phi,
                                     std::uint64_t budget) {
  if (kind < 1 || kind > 4) {
    throw BadParams("minimality kind must be 1..4, got " +
                    std::to_string(kind));
  }
  if (kind == 4 && actors) {
    throw BadParams("kind 4 quantifies the actors; none may be given");
  }
  if (kind != 4 && !actors) {
    throw BadParams("kind " + std::to_string(kind) +
                    " needs an actor coalition");
  }
  if (play >= game.plays().size()) throw BadParams("play index out of range");
  game.agent_indices(knowers);
  if (actors) game.agent_indices(*actors);

  // Worst case: kind 4 runs kind 3 for every D, each over all E, F.
  const std::size_t n = game.agents().size();
  const std::size_t exponent = kind == 4 ? 3 * n : 2 * n;
  if (exponent >= 64 || (std::uint64_t{1} << exponent) > budget) {
    throw ResourceLimit("minimality check over " + std::to_string(n) +
                        " agents exceeds budget of " + std::to_string(budget));
  }

  Checker checker(game, play, phi);
  switch (kind) {
    case 1: return {checker.kind1(knowers, *actors), std::nullopt};
    case 2: return {checker.kind2(knowers, *actors), std::nullopt};
    case 3: return {checker.kind3(knowers, *actors), std::nullopt};
    default: {
      auto d = checker.kind4(knowers);
      return {d.has_value(), d};
    }
  }
}

bool check_minimal(int kind, const Game& game, std::size_t play,
                   const Coalition& knowers,
                   const std::optional<Coalition>& actors, const Formula& phi,
                   std::uint64_t budget) {
  return check_minimal_verdict(kind, game, play, knowers, actors, phi, budget)
      .holds;
}

}  // namespace dtw
