#include "dtw/deduction.h"

#include <optional>

#include "dtw/error.h"
#include "dtw/syntax.h"

namespace dtw {

ScriptBuilder::ScriptBuilder(std::vector<Formula> hypotheses) {
  script_.hypotheses = std::move(hypotheses);
}

bool ScriptBuilder::rests_on_hypothesis(const Justification& j) const {
  switch (j.kind) {
    case Justification::Kind::kHypothesis:
      return true;
    case Justification::Kind::kModusPonens:
      return depends_.at(j.first) || depends_.at(j.second);
    default:
      return false;
  }
}

std::size_t ScriptBuilder::add(Formula f, Justification j) {
  const bool dep = rests_on_hypothesis(j);
  if (auto it = index_.find(f); it != index_.end()) {
    if (!depends_[it->second] || dep) return latest_ = it->second;
  }
  index_[f] = latest_ = script_.lines.size();
  depends_.push_back(dep);
  script_.lines.push_back({std::move(f), std::move(j)});
  return script_.lines.size() - 1;
}

std::size_t ScriptBuilder::axiom(Schema s, const Substitution& sub) {
  return add(instantiate(s, sub), Justification::make_axiom(s));
}

std::size_t ScriptBuilder::taut(Formula f) {
  return add(std::move(f), Justification::tautology());
}

std::size_t ScriptBuilder::hyp(std::size_t index) {
  if (index >= script_.hypotheses.size()) {
    throw Error("no hypothesis " + std::to_string(index + 1));
  }
  return add(script_.hypotheses[index], Justification::hypothesis(index));
}

std::size_t ScriptBuilder::thm(std::string id, Formula f) {
  return add(std::move(f), Justification::theorem_ref(std::move(id)));
}

std::size_t ScriptBuilder::mp(std::size_t i, std::size_t j) {
  const Formula& major = formula(j);
  if (!major.is(Formula::Kind::kImplies) || !(major.lhs() == formula(i))) {
    throw Error("modus ponens mismatch: " + render(formula(i)) + " / " +
                render(major));
  }
  return add(major.rhs(), Justification::modus_ponens(i, j));
}

std::size_t ScriptBuilder::nec(std::size_t i, Coalition c) {
  Formula f = Formula::know(c, formula(i));
  return add(std::move(f), Justification::necessitation(i, std::move(c)));
}

std::size_t ScriptBuilder::splice(const ProofScript& sub,
                                  const std::vector<std::size_t>& hyp_lines) {
  if (sub.lines.empty()) throw Error("cannot splice an empty script");
  std::vector<std::size_t> where(sub.lines.size());
  for (std::size_t k = 0; k < sub.lines.size(); ++k) {
    const auto& [f, j] = sub.lines[k];
    switch (j.kind) {
      case Justification::Kind::kHypothesis:
        if (j.first >= hyp_lines.size() || !(formula(hyp_lines[j.first]) == f)) {
          throw Error("spliced hypothesis " + std::to_string(j.first + 1) +
                      " is not discharged");
        }
        where[k] = hyp_lines[j.first];
        break;
      case Justification::Kind::kModusPonens:
        where[k] = add(f, Justification::modus_ponens(where[j.first],
                                                      where[j.second]));
        break;
      case Justification::Kind::kNecessitation:
        where[k] = add(f, Justification::necessitation(where[j.first],
                                                       j.coalition));
        break;
      default:
        where[k] = add(f, j);
    }
  }
  return where.back();
}

const Formula& ScriptBuilder::formula(std::size_t line) const {
  if (line >= script_.lines.size()) {
    throw Error("no line " + std::to_string(line + 1));
  }
  return script_.lines[line].formula;
}

ProofScript ScriptBuilder::finish(std::string id) const {
  return finish_at(latest_, std::move(id));
}

ProofScript ScriptBuilder::finish_at(std::size_t line, std::string id) const {
  if (line >= script_.lines.size()) throw Error("no line to finish at");
  ProofScript out = script_;
  out.lines.erase(out.lines.begin() + line + 1, out.lines.end());
  out.goal = out.lines.back().formula;
  out.id = std::move(id);
  return prune_unused(out);
}

ProofScript prune_unused(const ProofScript& s) {
  if (s.lines.empty()) return s;
  const std::size_t n = s.lines.size();
  std::vector<char> used(n, 0);
  used[n - 1] = 1;
  for (std::size_t k = n; k-- > 0;) {
    if (!used[k]) continue;
    const Justification& j = s.lines[k].justification;
    if (j.kind == Justification::Kind::kModusPonens) {
      used[j.first] = used[j.second] = 1;
    } else if (j.kind == Justification::Kind::kNecessitation) {
      used[j.first] = 1;
    }
  }
  ProofScript out;
  out.id = s.id;
  out.hypotheses = s.hypotheses;
  out.goal = s.goal;
  std::vector<std::size_t> renumber(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!used[k]) continue;
    Justification j = s.lines[k].justification;
    if (j.kind == Justification::Kind::kModusPonens) {
      j.first = renumber[j.first];
      j.second = renumber[j.second];
    } else if (j.kind == Justification::Kind::kNecessitation) {
      j.first = renumber[j.first];
    }
    renumber[k] = out.lines.size();
    out.lines.push_back({s.lines[k].formula, std::move(j)});
  }
  return out;
}

ProofScript apply_deduction_theorem(const ProofScript& s) {
  if (s.hypotheses.empty()) throw BadParams("no hypothesis to discharge");
  if (s.lines.empty()) throw BadParams("empty script");
  const std::size_t last = s.hypotheses.size() - 1;
  const Formula chi = s.hypotheses[last];
  ScriptBuilder b({s.hypotheses.begin(), s.hypotheses.end() - 1});

  const std::size_t n = s.lines.size();
  std::vector<char> on_chi(n, 0);
  std::vector<std::optional<std::size_t>> plain(n);   // line proving L
  std::vector<std::optional<std::size_t>> guarded(n);  // line proving chi -> L

  auto guard = [&](std::size_t k) {
    if (!guarded[k]) {
      const Formula& f = s.lines[k].formula;
      std::size_t weaken =
          b.taut(Formula::implies(f, Formula::implies(chi, f)));
      guarded[k] = b.mp(*plain[k], weaken);
    }
    return *guarded[k];
  };

  for (std::size_t k = 0; k < n; ++k) {
    const auto& [f, j] = s.lines[k];
    switch (j.kind) {
      case Justification::Kind::kHypothesis:
        if (j.first == last) {
          on_chi[k] = 1;
          guarded[k] = b.taut(Formula::implies(chi, chi));
        } else {
          plain[k] = b.hyp(j.first);
        }
        break;
      case Justification::Kind::kModusPonens: {
        const std::size_t i = j.first, m = j.second;
        if (i >= k || m >= k) throw BadParams("forward reference");
        on_chi[k] = on_chi[i] || on_chi[m];
        if (!on_chi[k]) {
          plain[k] = b.mp(*plain[i], *plain[m]);
          break;
        }
        // (chi -> (A -> B)) -> ((chi -> A) -> (chi -> B))
        const Formula& a = s.lines[i].formula;
        Formula dist = Formula::implies(
            Formula::implies(chi, Formula::implies(a, f)),
            Formula::implies(Formula::implies(chi, a),
                             Formula::implies(chi, f)));
        std::size_t major = guard(m);
        std::size_t minor = guard(i);
        std::size_t s_line = b.taut(std::move(dist));
        guarded[k] = b.mp(minor, b.mp(major, s_line));
        break;
      }
      case Justification::Kind::kNecessitation:
        if (j.first >= k) throw BadParams("forward reference");
        if (on_chi[j.first]) {
          throw BadParams("necessitation of line " +
                          std::to_string(j.first + 1) +
                          ", which rests on the discharged hypothesis");
        }
        plain[k] = b.nec(*plain[j.first], j.coalition);
        break;
      default:
        plain[k] = b.add(f, j);
    }
  }
  return b.finish_at(guard(n - 1));
}

}  // namespace dtw
