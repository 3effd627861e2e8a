#include "dtw/expand.h"

#include <string>
#include <vector>

#include "dtw/error.h"

namespace dtw {
namespace {

class Expander {
 public:
  Expander(const Formula& phi, const Coalition& universe, std::size_t budget)
      : phi_(phi), universe_(universe), budget_(budget) {}

  Formula kind1(const Coalition& c, const Coalition& d) {
    return conj(blame(c, d), Formula::negation(proper_knowers(c, d)));
  }

  Formula kind2(const Coalition& c, const Coalition& d) {
    std::vector<Formula> outer;
    for_each_subset(c, /*proper=*/true, [&](const Coalition& e) {
      std::vector<Formula> inner;
      for_each_subset(universe_, false, [&](const Coalition& f) {
        inner.push_back(blame(e, f));
      });
      outer.push_back(disj_all(inner));
    });
    return conj(blame(c, d), Formula::negation(charge(disj_all(outer))));
  }

  Formula kind3(const Coalition& c, const Coalition& d) {
    std::vector<Formula> outer;
    for_each_subset(universe_, false, [&](const Coalition& e) {
      std::vector<Formula> inner;
      for_each_subset(d, /*proper=*/true, [&](const Coalition& f) {
        inner.push_back(blame(e, f));
      });
      outer.push_back(disj_all(inner));
    });
    Formula smaller_actors = Formula::negation(charge(disj_all(outer)));
    return charge(conj(conj(blame(c, d), smaller_actors),
                       Formula::negation(proper_knowers(c, d))));
  }

  Formula kind4(const Coalition& c) {
    std::vector<Formula> terms;
    for_each_subset(universe_, false,
                    [&](const Coalition& d) { terms.push_back(kind3(c, d)); });
    return charge(disj_all(terms));
  }

 private:
  // OR_{E < C} B^D_E phi
  Formula proper_knowers(const Coalition& c, const Coalition& d) {
    std::vector<Formula> items;
    for_each_subset(c, /*proper=*/true,
                    [&](const Coalition& e) { items.push_back(blame(e, d)); });
    return charge(disj_all(items));
  }

  Formula blame(const Coalition& c, const Coalition& d) {
    used_ += phi_.size() + 1;
    check();
    return Formula::blame(c, d, phi_);
  }

  Formula charge(Formula f) {
    // Connective overhead; the blame leaves were charged when built.
    used_ += 4;
    check();
    return f;
  }

  void check() const {
    if (used_ > budget_) {
      throw UniverseTooLarge("minimality expansion exceeds node budget of " +
                             std::to_string(budget_));
    }
  }

  template <typename Fn>
  void for_each_subset(const Coalition& base, bool proper, Fn&& fn) {
    const std::size_t full = (std::size_t{1} << base.size());
    const std::size_t end = proper ? full - 1 : full;
    for (std::size_t mask = 0; mask < end; ++mask) fn(base.subset(mask));
  }

  const Formula& phi_;
  const Coalition& universe_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

}  // namespace

Formula expand_minimality(int kind, const Coalition& knowers,
                          const std::optional<Coalition>& actors,
                          const Formula& phi, const Coalition& universe,
                          std::size_t node_budget) {
  if (kind < 1 || kind > 4) {
    throw BadParams("minimality kind must be 1..4, got " +
                    std::to_string(kind));
  }
  if (kind == 4 && actors) {
    throw BadParams("kind 4 quantifies the actors; none may be given");
  }
  if (kind != 4 && !actors) {
    throw BadParams("kind " + std::to_string(kind) + " needs an actor coalition");
  }
  for (const auto& a : knowers) {
    if (!universe.contains(a)) throw UnknownAgent(a);
  }
  if (actors) {
    for (const auto& a : *actors) {
      if (!universe.contains(a)) throw UnknownAgent(a);
    }
  }
  if (universe.size() >= 40) {
    throw UniverseTooLarge("universe of " + std::to_string(universe.size()) +
                           " agents");
  }
  Expander ex(phi, universe, node_budget);
  switch (kind) {
    case 1: return ex.kind1(knowers, *actors);
    case 2: return ex.kind2(knowers, *actors);
    case 3: return ex.kind3(knowers, *actors);
    default: return ex.kind4(knowers);
  }
}

}  // namespace dtw
