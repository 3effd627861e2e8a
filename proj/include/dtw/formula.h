#ifndef DTW_FORMULA_H_
#define DTW_FORMULA_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dtw/coalition.h"

namespace dtw {

// Core language: p | ~f | f -> f | K_C f | B_C^D f. Every other connective is
// an abbreviation built from these (see the sugar helpers below).
//
// Formula is an immutable handle to a shared node; copies are cheap and
// values may be shared across threads.
class Formula {
 public:
  enum class Kind : std::uint8_t { kProp, kNot, kImplies, kKnow, kBlame };

  static Formula prop(std::string name);
  static Formula negation(Formula operand);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula know(Coalition knowers, Formula operand);
  // B_C^D f with C = knowers (subscript) and D = actors (superscript).
  static Formula blame(Coalition knowers, Coalition actors, Formula operand);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  const std::string& name() const { return node_->name; }
  // Operand of Not, Know and Blame.
  const Formula& operand() const { return *node_->lhs; }
  const Formula& lhs() const { return *node_->lhs; }
  const Formula& rhs() const { return *node_->rhs; }
  const Coalition& knowers() const { return node_->knowers; }
  const Coalition& actors() const { return node_->actors; }

  std::size_t hash() const { return node_->hash; }
  // Number of nodes of the formula as a tree; saturates at SIZE_MAX.
  std::size_t size() const { return node_->size; }
  // Identity of the shared node, usable as a memoization key.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind = Kind::kProp;
    std::string name;
    Coalition knowers;
    Coalition actors;
    std::unique_ptr<Formula> lhs;
    std::unique_ptr<Formula> rhs;
    std::size_t hash = 0;
    std::size_t size = 1;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Reserved proposition used to express falsum inside the core language.
inline constexpr std::string_view kReservedSeed = "__true_seed";

Formula falsum();                       // ~(__true_seed -> __true_seed)
Formula verum();                        // ~falsum()
bool is_falsum(const Formula& f);
Formula conj(Formula a, Formula b);     // ~(a -> ~b)
Formula disj(Formula a, Formula b);     // ~a -> b
Formula iff(Formula a, Formula b);      // (a -> b) & (b -> a)
Formula dual_know(Coalition c, Formula a);  // ~K_C ~a

// Left-associated n-ary forms, matching how the parser reads `a | b | c`.
// The empty disjunction is falsum and the empty conjunction is verum.
Formula disj_all(const std::vector<Formula>& items);
Formula conj_all(const std::vector<Formula>& items);

// Distinct subformulas in post-order, `f` last.
std::vector<Formula> subformulas(const Formula& f);

std::set<std::string> propositions(const Formula& f);
// Every agent named in any coalition annotation.
Coalition agents_of(const Formula& f);

}  // namespace dtw

template <>
struct std::hash<dtw::Formula> {
  std::size_t operator()(const dtw::Formula& f) const { return f.hash(); }
};

#endif  // DTW_FORMULA_H_
