#ifndef DTW_TESTS_MUTATIONS_H_
#define DTW_TESTS_MUTATIONS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dtw/formula.h"
#include "dtw/lemmas.h"
#include "dtw/proof.h"

namespace mutations {

enum class Kind { kNegate, kSwap, kCoalition };

struct Mutant {
  Kind kind;
  std::size_t line;
  dtw::ProofScript script;
};

// The first coalition in pre-order (knowers before actors) with one agent
// changed: its first member removed, or `extra` added when it is empty.
inline std::optional<dtw::Formula> alter_coalition(const dtw::Formula& f,
                                                   const dtw::Agent& extra) {
  using dtw::Formula;
  auto alter = [&](const dtw::Coalition& c) {
    return c.empty() ? c.with(extra) : c.without(c.members().front());
  };
  switch (f.kind()) {
    case Formula::Kind::kProp:
      return std::nullopt;
    case Formula::Kind::kNot:
      if (auto g = alter_coalition(f.operand(), extra)) return Formula::negation(*g);
      return std::nullopt;
    case Formula::Kind::kImplies:
      if (auto g = alter_coalition(f.lhs(), extra)) return Formula::implies(*g, f.rhs());
      if (auto g = alter_coalition(f.rhs(), extra)) return Formula::implies(f.lhs(), *g);
      return std::nullopt;
    case Formula::Kind::kKnow:
      return Formula::know(alter(f.knowers()), f.operand());
    case Formula::Kind::kBlame:
      return Formula::blame(alter(f.knowers()), f.actors(), f.operand());
  }
  return std::nullopt;
}

// Every single-line formula mutation of `s`.
inline std::vector<Mutant> all_mutants(const dtw::ProofScript& s) {
  std::vector<Mutant> out;
  auto emit = [&](Kind k, std::size_t i, dtw::Formula f) {
    dtw::ProofScript m = s;
    m.lines[i].formula = std::move(f);
    out.push_back({k, i, std::move(m)});
  };
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    const dtw::Formula& f = s.lines[i].formula;
    emit(Kind::kNegate, i, dtw::Formula::negation(f));
    if (f.is(dtw::Formula::Kind::kImplies) && !(f.lhs() == f.rhs())) {
      emit(Kind::kSwap, i, dtw::Formula::implies(f.rhs(), f.lhs()));
    }
    if (auto g = alter_coalition(f, "zz")) emit(Kind::kCoalition, i, *g);
  }
  return out;
}

// Registers every accepted hypothesis-free bundled script.
inline dtw::ProofLibrary bundled_library(
    const std::vector<dtw::BundledScript>& bundle) {
  dtw::ProofLibrary lib;
  for (const auto& b : bundle) dtw::check_and_register(b.script, lib);
  return lib;
}

}  // namespace mutations

#endif  // DTW_TESTS_MUTATIONS_H_
