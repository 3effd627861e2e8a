#ifndef DTW_PROOF_H_
#define DTW_PROOF_H_

#include <cstddef>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "dtw/coalition.h"
#include "dtw/formula.h"
#include "dtw/schema.h"

namespace dtw {

inline constexpr std::size_t kMaxTautologyAtoms = 20;

// Line references are 0-based here; the text format uses 1-based numbers.
struct Justification {
  enum class Kind {
    kAxiom,
    kTautology,
    kHypothesis,
    kTheorem,
    kModusPonens,
    kNecessitation,
  };

  Kind kind = Kind::kTautology;
  Schema axiom = Schema::kTruthK;
  // Hypothesis: first = hypothesis index. ModusPonens: line j must be
  // (line i -> current), with i = first and j = second. Necessitation:
  // first = the line necessitated.
  std::size_t first = 0;
  std::size_t second = 0;
  std::string theorem;
  Coalition coalition;

  static Justification make_axiom(Schema s);
  static Justification tautology();
  static Justification hypothesis(std::size_t index);
  static Justification theorem_ref(std::string id);
  static Justification modus_ponens(std::size_t i, std::size_t j);
  static Justification necessitation(std::size_t i, Coalition c);

  friend bool operator==(const Justification&, const Justification&) = default;
};

struct ProofLine {
  Formula formula;
  Justification justification;

  friend bool operator==(const ProofLine&, const ProofLine&) = default;
};

struct ProofScript {
  // Library key under which an accepted, hypothesis-free script is
  // registered; may be empty.
  std::string id;
  std::vector<Formula> hypotheses;
  std::vector<ProofLine> lines;
  std::optional<Formula> goal;

  friend bool operator==(const ProofScript&, const ProofScript&) = default;
};

enum class RejectReason {
  kNone,
  kEmptyScript,
  kNotAnAxiom,
  kNotAxiomInstance,
  kNotTautology,
  kTooManyAtoms,
  kBadHypothesisIndex,
  kHypothesisMismatch,
  kUnknownTheorem,
  kTheoremMismatch,
  kForwardReference,
  kModusPonensMismatch,
  kNecessitationMismatch,
  kNecessitationOnHypothesis,
  kMissingGoal,
  kGoalMismatch,
};

// "not-axiom-instance", "nec-on-hypothesis", ...
std::string_view reason_code(RejectReason r);

struct ProofCheck {
  bool accepted = false;
  std::optional<std::size_t> line;  // 0-based; absent for whole-script faults
  RejectReason reason = RejectReason::kNone;
  std::string message;
};

// Verified theorems by id. Concurrent lookups; registration takes an
// exclusive lock.
class ProofLibrary {
 public:
  ProofLibrary() = default;
  ProofLibrary(const ProofLibrary& other);
  ProofLibrary& operator=(const ProofLibrary& other);

  // Throws Error when `id` is already bound to a different formula.
  void add(const std::string& id, const Formula& f);
  std::optional<Formula> find(const std::string& id) const;
  std::vector<std::string> ids() const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, Formula> items_;
};

// Assignment making `f` an instance of the axiom, side conditions included.
std::optional<Substitution> match_axiom(Schema axiom, const Formula& f);

// Truth-table check with propositions and modal subformulas as opaque
// atoms. Throws TooManyAtoms beyond kMaxTautologyAtoms atoms.
bool is_tautology(const Formula& f);

// Checks every line in order and stops at the first failure. Necessitation
// may only cite lines that do not depend on a hypothesis.
ProofCheck check_proof(const ProofScript& s, const ProofLibrary& library);

// Checks and, when accepted with no hypotheses and a nonempty id,
// registers the goal in `library`.
ProofCheck check_and_register(const ProofScript& s, ProofLibrary& library);

}  // namespace dtw

#endif  // DTW_PROOF_H_
