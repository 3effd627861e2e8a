#ifndef DTW_DEDUCTION_H_
#define DTW_DEDUCTION_H_

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtw/coalition.h"
#include "dtw/formula.h"
#include "dtw/proof.h"
#include "dtw/schema.h"

namespace dtw {

// Incremental construction of proof scripts. Line indices are 0-based.
// mp() and nec() compute the conclusion themselves and throw Error when
// the cited lines do not fit. Adding a formula that an earlier line already
// proves returns that line, unless the earlier one rests on a hypothesis
// and the new one would not.
class ScriptBuilder {
 public:
  explicit ScriptBuilder(std::vector<Formula> hypotheses = {});

  std::size_t add(Formula f, Justification j);
  std::size_t axiom(Schema s, const Substitution& sub);
  std::size_t taut(Formula f);
  std::size_t hyp(std::size_t index);
  std::size_t thm(std::string id, Formula f);
  // From line i and line j = (line i -> X), derives X.
  std::size_t mp(std::size_t i, std::size_t j);
  std::size_t nec(std::size_t i, Coalition c);

  // Copies the lines of `sub`. Its hypothesis k is discharged by line
  // hyp_lines[k] of this script. Returns the line holding sub's last
  // formula.
  std::size_t splice(const ProofScript& sub,
                     const std::vector<std::size_t>& hyp_lines);

  const Formula& formula(std::size_t line) const;
  const std::vector<Formula>& hypotheses() const { return script_.hypotheses; }
  std::size_t size() const { return script_.lines.size(); }

  // The script whose goal is the formula of the most recently returned
  // line, with every line that goal does not rest on removed.
  ProofScript finish(std::string id = {}) const;
  // Same, with the goal taken from `line`.
  ProofScript finish_at(std::size_t line, std::string id = {}) const;

 private:
  bool rests_on_hypothesis(const Justification& j) const;

  ProofScript script_;
  std::vector<char> depends_;
  std::size_t latest_ = 0;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
};

// Drops lines not used (transitively) by the last line and renumbers.
ProofScript prune_unused(const ProofScript& s);

// From a derivation of X, chi |- psi (chi the last hypothesis) builds one
// of X |- chi -> psi. Lines not resting on chi are kept; every other line L
// becomes chi -> L, via the tautologies A -> (chi -> A), chi -> chi and
// (chi -> (A -> B)) -> ((chi -> A) -> (chi -> B)). Throws BadParams when
// the script has no hypotheses or necessitates a line resting on chi.
ProofScript apply_deduction_theorem(const ProofScript& s);

}  // namespace dtw

#endif  // DTW_DEDUCTION_H_
