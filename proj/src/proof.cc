#include "dtw/proof.h"

#include <mutex>
#include <unordered_map>
#include <utility>

#include "dtw/error.h"
#include "dtw/syntax.h"

namespace dtw {

Justification Justification::make_axiom(Schema s) {
  Justification j;
  j.kind = Kind::kAxiom;
  j.axiom = s;
  return j;
}

Justification Justification::tautology() { return Justification{}; }

Justification Justification::hypothesis(std::size_t index) {
  Justification j;
  j.kind = Kind::kHypothesis;
  j.first = index;
  return j;
}

Justification Justification::theorem_ref(std::string id) {
  Justification j;
  j.kind = Kind::kTheorem;
  j.theorem = std::move(id);
  return j;
}

Justification Justification::modus_ponens(std::size_t i, std::size_t j) {
  Justification out;
  out.kind = Kind::kModusPonens;
  out.first = i;
  out.second = j;
  return out;
}

Justification Justification::necessitation(std::size_t i, Coalition c) {
  Justification j;
  j.kind = Kind::kNecessitation;
  j.first = i;
  j.coalition = std::move(c);
  return j;
}

std::string_view reason_code(RejectReason r) {
  switch (r) {
    case RejectReason::kNone: return "none";
    case RejectReason::kEmptyScript: return "empty-script";
    case RejectReason::kNotAnAxiom: return "not-an-axiom";
    case RejectReason::kNotAxiomInstance: return "not-axiom-instance";
    case RejectReason::kNotTautology: return "not-tautology";
    case RejectReason::kTooManyAtoms: return "too-many-atoms";
    case RejectReason::kBadHypothesisIndex: return "bad-hypothesis-index";
    case RejectReason::kHypothesisMismatch: return "hypothesis-mismatch";
    case RejectReason::kUnknownTheorem: return "unknown-theorem";
    case RejectReason::kTheoremMismatch: return "theorem-mismatch";
    case RejectReason::kForwardReference: return "forward-reference";
    case RejectReason::kModusPonensMismatch: return "mp-mismatch";
    case RejectReason::kNecessitationMismatch: return "nec-mismatch";
    case RejectReason::kNecessitationOnHypothesis: return "nec-on-hypothesis";
    case RejectReason::kMissingGoal: return "missing-goal";
    case RejectReason::kGoalMismatch: return "goal-mismatch";
  }
  return "unknown";
}

ProofLibrary::ProofLibrary(const ProofLibrary& other) {
  std::shared_lock lock(other.mu_);
  items_ = other.items_;
}

ProofLibrary& ProofLibrary::operator=(const ProofLibrary& other) {
  if (this == &other) return *this;
  std::map<std::string, Formula> copy;
  {
    std::shared_lock lock(other.mu_);
    copy = other.items_;
  }
  std::unique_lock lock(mu_);
  items_ = std::move(copy);
  return *this;
}

void ProofLibrary::add(const std::string& id, const Formula& f) {
  std::unique_lock lock(mu_);
  auto [it, inserted] = items_.emplace(id, f);
  if (!inserted && !(it->second == f)) {
    throw Error("theorem '" + id + "' is already registered with goal " +
                render(it->second));
  }
}

std::optional<Formula> ProofLibrary::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = items_.find(id);
  if (it == items_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ProofLibrary::ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, f] : items_) out.push_back(id);
  return out;
}

std::size_t ProofLibrary::size() const {
  std::shared_lock lock(mu_);
  return items_.size();
}

std::optional<Substitution> match_axiom(Schema axiom, const Formula& f) {
  if (!is_axiom(axiom)) return std::nullopt;
  return match_schema(axiom, f);
}

namespace {

// Boolean skeleton of a formula: a DAG in evaluation order whose leaves are
// the opaque atoms.
struct Skeleton {
  enum class Op : std::uint8_t { kAtom, kNot, kImplies };
  struct Node {
    Op op;
    std::size_t a;  // atom index, or first operand
    std::size_t b;
  };
  std::vector<Node> nodes;
  std::size_t atoms = 0;
};

class SkeletonBuilder {
 public:
  std::size_t add(const Formula& f) {
    if (auto it = by_id_.find(f.id()); it != by_id_.end()) return it->second;
    std::size_t out;
    switch (f.kind()) {
      case Formula::Kind::kNot: {
        std::size_t a = add(f.operand());
        out = push({Skeleton::Op::kNot, a, 0});
        break;
      }
      case Formula::Kind::kImplies: {
        std::size_t a = add(f.lhs());
        std::size_t b = add(f.rhs());
        out = push({Skeleton::Op::kImplies, a, b});
        break;
      }
      default: {
        auto [it, inserted] = atom_nodes_.emplace(f, 0);
        if (inserted) {
          it->second = push({Skeleton::Op::kAtom, skeleton_.atoms++, 0});
          if (skeleton_.atoms > kMaxTautologyAtoms) {
            throw TooManyAtoms("formula has more than " +
                               std::to_string(kMaxTautologyAtoms) +
                               " propositional atoms");
          }
        }
        out = it->second;
      }
    }
    by_id_.emplace(f.id(), out);
    return out;
  }

  Skeleton take() { return std::move(skeleton_); }

 private:
  std::size_t push(Skeleton::Node n) {
    skeleton_.nodes.push_back(n);
    return skeleton_.nodes.size() - 1;
  }

  Skeleton skeleton_;
  std::unordered_map<const void*, std::size_t> by_id_;
  std::unordered_map<Formula, std::size_t, FormulaHash> atom_nodes_;
};

// Truth values of atom k across the 64 assignments numbered 64*w .. 64*w+63.
std::uint64_t atom_word(std::size_t k, std::uint64_t w) {
  static constexpr std::uint64_t kPatterns[6] = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  if (k < 6) return kPatterns[k];
  return (w >> (k - 6)) & 1 ? ~std::uint64_t{0} : 0;
}

}  // namespace

bool is_tautology(const Formula& f) {
  SkeletonBuilder builder;
  std::size_t root = builder.add(f);
  Skeleton sk = builder.take();
  const std::uint64_t assignments = std::uint64_t{1} << sk.atoms;
  const std::uint64_t words = (assignments + 63) / 64;
  const std::uint64_t live =
      assignments >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << assignments) - 1;
  std::vector<std::uint64_t> val(sk.nodes.size());
  for (std::uint64_t w = 0; w < words; ++w) {
    for (std::size_t i = 0; i < sk.nodes.size(); ++i) {
      const auto& n = sk.nodes[i];
      switch (n.op) {
        case Skeleton::Op::kAtom: val[i] = atom_word(n.a, w); break;
        case Skeleton::Op::kNot: val[i] = ~val[n.a]; break;
        case Skeleton::Op::kImplies: val[i] = ~val[n.a] | val[n.b]; break;
      }
    }
    if ((val[root] & live) != live) return false;
  }
  return true;
}

ProofCheck check_proof(const ProofScript& s, const ProofLibrary& library) {
  auto reject = [](std::optional<std::size_t> line, RejectReason r,
                   std::string msg) {
    ProofCheck out;
    out.line = line;
    out.reason = r;
    out.message = std::move(msg);
    return out;
  };
  if (s.lines.empty()) {
    return reject(std::nullopt, RejectReason::kEmptyScript, "no lines");
  }
  // depends[k]: line k rests on some hypothesis.
  std::vector<char> depends(s.lines.size(), 0);
  for (std::size_t k = 0; k < s.lines.size(); ++k) {
    const Formula& f = s.lines[k].formula;
    const Justification& j = s.lines[k].justification;
    auto earlier = [&](std::size_t i) { return i < k; };
    switch (j.kind) {
      case Justification::Kind::kAxiom:
        if (!is_axiom(j.axiom)) {
          return reject(k, RejectReason::kNotAnAxiom,
                        std::string(schema_name(j.axiom)) +
                            " is not an axiom");
        }
        if (!match_axiom(j.axiom, f)) {
          return reject(k, RejectReason::kNotAxiomInstance,
                        "not an instance of " +
                            std::string(schema_name(j.axiom)));
        }
        break;
      case Justification::Kind::kTautology:
        try {
          if (!is_tautology(f)) {
            return reject(k, RejectReason::kNotTautology, "not a tautology");
          }
        } catch (const TooManyAtoms& e) {
          return reject(k, RejectReason::kTooManyAtoms, e.what());
        }
        break;
      case Justification::Kind::kHypothesis:
        if (j.first >= s.hypotheses.size()) {
          return reject(k, RejectReason::kBadHypothesisIndex,
                        "no hypothesis " + std::to_string(j.first + 1));
        }
        if (!(s.hypotheses[j.first] == f)) {
          return reject(k, RejectReason::kHypothesisMismatch,
                        "differs from hypothesis " +
                            std::to_string(j.first + 1));
        }
        depends[k] = 1;
        break;
      case Justification::Kind::kTheorem: {
        auto thm = library.find(j.theorem);
        if (!thm) {
          return reject(k, RejectReason::kUnknownTheorem,
                        "unknown theorem '" + j.theorem + "'");
        }
        if (!(*thm == f)) {
          return reject(k, RejectReason::kTheoremMismatch,
                        "differs from theorem '" + j.theorem + "'");
        }
        break;
      }
      case Justification::Kind::kModusPonens: {
        if (!earlier(j.first) || !earlier(j.second)) {
          return reject(k, RejectReason::kForwardReference,
                        "modus ponens must cite earlier lines");
        }
        const Formula& major = s.lines[j.second].formula;
        if (!major.is(Formula::Kind::kImplies) ||
            !(major.lhs() == s.lines[j.first].formula) || !(major.rhs() == f)) {
          return reject(k, RejectReason::kModusPonensMismatch,
                        "line " + std::to_string(j.second + 1) +
                            " is not line " + std::to_string(j.first + 1) +
                            " -> this line");
        }
        depends[k] = depends[j.first] || depends[j.second];
        break;
      }
      case Justification::Kind::kNecessitation: {
        if (!earlier(j.first)) {
          return reject(k, RejectReason::kForwardReference,
                        "necessitation must cite an earlier line");
        }
        if (!(f == Formula::know(j.coalition, s.lines[j.first].formula))) {
          return reject(k, RejectReason::kNecessitationMismatch,
                        "not K" + j.coalition.to_string() + " of line " +
                            std::to_string(j.first + 1));
        }
        if (depends[j.first]) {
          return reject(k, RejectReason::kNecessitationOnHypothesis,
                        "line " + std::to_string(j.first + 1) +
                            " depends on a hypothesis");
        }
        break;
      }
    }
  }
  if (!s.goal) {
    return reject(std::nullopt, RejectReason::kMissingGoal, "no goal");
  }
  if (!(*s.goal == s.lines.back().formula)) {
    return reject(s.lines.size() - 1, RejectReason::kGoalMismatch,
                  "last line is not the goal");
  }
  ProofCheck ok;
  ok.accepted = true;
  return ok;
}

ProofCheck check_and_register(const ProofScript& s, ProofLibrary& library) {
  ProofCheck result = check_proof(s, library);
  if (result.accepted && s.hypotheses.empty() && !s.id.empty()) {
    library.add(s.id, *s.goal);
  }
  return result;
}

}  // namespace dtw
