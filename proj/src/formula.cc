#include "dtw/formula.h"

#include <limits>
#include <unordered_set>

namespace dtw {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t coalition_hash(const Coalition& c) {
  std::size_t h = c.size();
  for (const auto& a : c) h = mix(h, std::hash<std::string>{}(a));
  return h;
}

std::size_t add_sat(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b
             ? std::numeric_limits<std::size_t>::max()
             : a + b;
}

}  // namespace

Formula Formula::make(Node node) {
  std::size_t h = static_cast<std::size_t>(node.kind) * 0x100000001b3ULL;
  std::size_t size = 1;
  if (node.kind == Kind::kProp) h = mix(h, std::hash<std::string>{}(node.name));
  if (node.lhs) {
    h = mix(h, node.lhs->hash());
    size = add_sat(size, node.lhs->size());
  }
  if (node.rhs) {
    h = mix(h, node.rhs->hash());
    size = add_sat(size, node.rhs->size());
  }
  if (node.kind == Kind::kKnow || node.kind == Kind::kBlame) {
    h = mix(h, coalition_hash(node.knowers));
    h = mix(h, coalition_hash(node.actors));
  }
  node.hash = h;
  node.size = size;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::prop(std::string name) {
  Node n;
  n.kind = Kind::kProp;
  n.name = std::move(name);
  return make(std::move(n));
}

Formula Formula::negation(Formula operand) {
  Node n;
  n.kind = Kind::kNot;
  n.lhs = std::make_unique<Formula>(std::move(operand));
  return make(std::move(n));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  Node n;
  n.kind = Kind::kImplies;
  n.lhs = std::make_unique<Formula>(std::move(lhs));
  n.rhs = std::make_unique<Formula>(std::move(rhs));
  return make(std::move(n));
}

Formula Formula::know(Coalition knowers, Formula operand) {
  Node n;
  n.kind = Kind::kKnow;
  n.knowers = std::move(knowers);
  n.lhs = std::make_unique<Formula>(std::move(operand));
  return make(std::move(n));
}

Formula Formula::blame(Coalition knowers, Coalition actors, Formula operand) {
  Node n;
  n.kind = Kind::kBlame;
  n.knowers = std::move(knowers);
  n.actors = std::move(actors);
  n.lhs = std::make_unique<Formula>(std::move(operand));
  return make(std::move(n));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) {
    return false;
  }
  switch (a.kind()) {
    case Formula::Kind::kProp:
      return a.name() == b.name();
    case Formula::Kind::kNot:
      return a.operand() == b.operand();
    case Formula::Kind::kImplies:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Formula::Kind::kKnow:
      return a.knowers() == b.knowers() && a.operand() == b.operand();
    case Formula::Kind::kBlame:
      return a.knowers() == b.knowers() && a.actors() == b.actors() &&
             a.operand() == b.operand();
  }
  return false;
}

Formula falsum() {
  static const Formula kFalsum = [] {
    Formula seed = Formula::prop(std::string(kReservedSeed));
    return Formula::negation(Formula::implies(seed, seed));
  }();
  return kFalsum;
}

Formula verum() { return Formula::negation(falsum()); }

bool is_falsum(const Formula& f) { return f == falsum(); }

Formula conj(Formula a, Formula b) {
  return Formula::negation(
      Formula::implies(std::move(a), Formula::negation(std::move(b))));
}

Formula disj(Formula a, Formula b) {
  return Formula::implies(Formula::negation(std::move(a)), std::move(b));
}

Formula iff(Formula a, Formula b) {
  return conj(Formula::implies(a, b), Formula::implies(b, a));
}

Formula dual_know(Coalition c, Formula a) {
  return Formula::negation(
      Formula::know(std::move(c), Formula::negation(std::move(a))));
}

Formula disj_all(const std::vector<Formula>& items) {
  if (items.empty()) return falsum();
  Formula out = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) out = disj(out, items[i]);
  return out;
}

Formula conj_all(const std::vector<Formula>& items) {
  if (items.empty()) return verum();
  Formula out = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) out = conj(out, items[i]);
  return out;
}

namespace {

void collect_post_order(const Formula& f,
                        std::unordered_set<Formula, FormulaHash>& seen,
                        std::vector<Formula>& out) {
  if (seen.count(f)) return;
  switch (f.kind()) {
    case Formula::Kind::kProp:
      break;
    case Formula::Kind::kImplies:
      collect_post_order(f.lhs(), seen, out);
      collect_post_order(f.rhs(), seen, out);
      break;
    default:
      collect_post_order(f.operand(), seen, out);
  }
  seen.insert(f);
  out.push_back(f);
}

}  // namespace

std::vector<Formula> subformulas(const Formula& f) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> out;
  collect_post_order(f, seen, out);
  return out;
}

std::set<std::string> propositions(const Formula& f) {
  std::set<std::string> out;
  for (const auto& s : subformulas(f)) {
    if (s.is(Formula::Kind::kProp)) out.insert(s.name());
  }
  return out;
}

Coalition agents_of(const Formula& f) {
  Coalition out;
  for (const auto& s : subformulas(f)) {
    if (s.is(Formula::Kind::kKnow) || s.is(Formula::Kind::kBlame)) {
      out = out.unite(s.knowers()).unite(s.actors());
    }
  }
  return out;
}

}  // namespace dtw
