#include "dtw/schema.h"

#include <utility>

#include "dtw/error.h"

namespace dtw {
namespace {

// Metavariables live inside ordinary formulas: a proposition "?phi" stands
// for a formula and an agent "?C" for a coalition. A coalition holding
// several metavariables denotes their union. Neither can clash with user
// input because '?' is not an identifier character.
Formula fv(const char* name) { return Formula::prop(std::string("?") + name); }
Coalition cv(const char* name) { return Coalition{std::string("?") + name}; }
Coalition cv(const char* a, const char* b) {
  return Coalition{std::string("?") + a, std::string("?") + b};
}

Formula imp(Formula a, Formula b) {
  return Formula::implies(std::move(a), std::move(b));
}
Formula neg(Formula a) { return Formula::negation(std::move(a)); }
Formula K(Coalition c, Formula a) { return Formula::know(std::move(c), std::move(a)); }
Formula B(Coalition c, Coalition d, Formula a) {
  return Formula::blame(std::move(c), std::move(d), std::move(a));
}

struct Entry {
  Schema id;
  std::string_view name;
  Formula pattern;
  std::vector<std::string> formula_vars;
  std::vector<std::string> coalition_vars;
};

Formula joint_pattern() {
  const Formula phi = fv("phi"), psi = fv("psi");
  return imp(conj(dual_know(cv("C"), B(cv("C"), cv("D"), phi)),
                  dual_know(cv("E"), B(cv("E"), cv("F"), psi))),
             imp(disj(phi, psi), B(cv("C", "E"), cv("D", "F"), disj(phi, psi))));
}

const std::vector<Entry>& table() {
  static const std::vector<Entry> kTable = [] {
    const Formula phi = fv("phi"), psi = fv("psi");
    const Coalition C = cv("C"), D = cv("D"), E = cv("E"), F = cv("F");
    std::vector<Entry> t;
    t.push_back({Schema::kTruthK, "Truth-K", imp(K(C, phi), phi), {"phi"}, {"C"}});
    t.push_back({Schema::kTruthB, "Truth-B", imp(B(C, D, phi), phi), {"phi"}, {"C", "D"}});
    t.push_back({Schema::kDistributivity, "Distributivity",
                 imp(K(C, imp(phi, psi)), imp(K(C, phi), K(C, psi))),
                 {"phi", "psi"}, {"C"}});
    t.push_back({Schema::kNegIntrospection, "NegIntrospection",
                 imp(neg(K(C, phi)), K(C, neg(K(C, phi)))), {"phi"}, {"C"}});
    t.push_back({Schema::kMonotonicityK, "Monotonicity-K",
                 imp(K(C, phi), K(E, phi)), {"phi"}, {"C", "E"}});
    t.push_back({Schema::kMonotonicityB, "Monotonicity-B",
                 imp(B(C, D, phi), B(E, F, phi)), {"phi"}, {"C", "D", "E", "F"}});
    t.push_back({Schema::kNoneToAct, "NoneToAct", neg(B(C, Coalition{}, phi)),
                 {"phi"}, {"C"}});
    t.push_back({Schema::kJointResponsibility, "JointResponsibility",
                 joint_pattern(), {"phi", "psi"}, {"C", "D", "E", "F"}});
    t.push_back({Schema::kStrictConditional, "StrictConditional",
                 imp(K(C, imp(phi, psi)), imp(B(C, D, psi), imp(phi, B(C, D, phi)))),
                 {"phi", "psi"}, {"C", "D"}});
    t.push_back({Schema::kIntrospectionOfBlame, "IntrospectionOfBlame",
                 imp(B(C, D, phi), K(C, imp(phi, B(C, D, phi)))), {"phi"}, {"C", "D"}});
    t.push_back({Schema::kLemma2, "Lemma2", imp(K(C, phi), K(C, K(C, phi))),
                 {"phi"}, {"C"}});
    t.push_back({Schema::kLemma3, "Lemma3",
                 imp(dual_know(C, B(C, D, phi)), imp(phi, B(C, D, phi))),
                 {"phi"}, {"C", "D"}});
    t.push_back({Schema::kJointResponsibilityUnrestricted,
                 "JointResponsibility-unrestricted", joint_pattern(),
                 {"phi", "psi"}, {"C", "D", "E", "F"}});
    return t;
  }();
  return kTable;
}

const Entry& entry(Schema s) {
  for (const auto& e : table()) {
    if (e.id == s) return e;
  }
  throw BadParams("unknown schema");
}

bool is_meta(const std::string& name) { return !name.empty() && name[0] == '?'; }

struct Matcher {
  Substitution sub;
  std::vector<std::pair<Coalition, Coalition>> unions;  // pattern, target

  bool coalition(const Coalition& pattern, const Coalition& target) {
    if (pattern.empty()) return target.empty();
    if (pattern.size() > 1) {
      unions.emplace_back(pattern, target);
      return true;
    }
    const std::string var = pattern.members().front().substr(1);
    auto [it, fresh] = sub.coalitions.emplace(var, target);
    return fresh || it->second == target;
  }

  bool formula(const Formula& pattern, const Formula& target) {
    if (pattern.is(Formula::Kind::kProp) && is_meta(pattern.name())) {
      auto [it, fresh] = sub.formulas.emplace(pattern.name().substr(1), target);
      return fresh || it->second == target;
    }
    if (pattern.kind() != target.kind()) return false;
    switch (pattern.kind()) {
      case Formula::Kind::kProp:
        return pattern.name() == target.name();
      case Formula::Kind::kNot:
        return formula(pattern.operand(), target.operand());
      case Formula::Kind::kImplies:
        return formula(pattern.lhs(), target.lhs()) &&
               formula(pattern.rhs(), target.rhs());
      case Formula::Kind::kKnow:
        return coalition(pattern.knowers(), target.knowers()) &&
               formula(pattern.operand(), target.operand());
      case Formula::Kind::kBlame:
        return coalition(pattern.knowers(), target.knowers()) &&
               coalition(pattern.actors(), target.actors()) &&
               formula(pattern.operand(), target.operand());
    }
    return false;
  }

  bool finish() {
    for (const auto& [pattern, target] : unions) {
      Coalition u;
      for (const auto& m : pattern) {
        auto it = sub.coalitions.find(m.substr(1));
        if (it == sub.coalitions.end()) return false;
        u = u.unite(it->second);
      }
      if (u != target) return false;
    }
    return true;
  }
};

Coalition subst_coalition(const Coalition& pattern, const Substitution& sub) {
  Coalition out;
  for (const auto& m : pattern) {
    auto it = sub.coalitions.find(m.substr(1));
    if (it == sub.coalitions.end()) {
      throw BadParams("coalition variable " + m.substr(1) + " is unbound");
    }
    out = out.unite(it->second);
  }
  return out;
}

Formula subst(const Formula& pattern, const Substitution& sub) {
  switch (pattern.kind()) {
    case Formula::Kind::kProp: {
      if (!is_meta(pattern.name())) return pattern;
      auto it = sub.formulas.find(pattern.name().substr(1));
      if (it == sub.formulas.end()) {
        throw BadParams("formula variable " + pattern.name().substr(1) + " is unbound");
      }
      return it->second;
    }
    case Formula::Kind::kNot:
      return Formula::negation(subst(pattern.operand(), sub));
    case Formula::Kind::kImplies:
      return Formula::implies(subst(pattern.lhs(), sub), subst(pattern.rhs(), sub));
    case Formula::Kind::kKnow:
      return Formula::know(subst_coalition(pattern.knowers(), sub),
                           subst(pattern.operand(), sub));
    case Formula::Kind::kBlame:
      return Formula::blame(subst_coalition(pattern.knowers(), sub),
                            subst_coalition(pattern.actors(), sub),
                            subst(pattern.operand(), sub));
  }
  return pattern;
}

}  // namespace

bool is_axiom(Schema s) {
  for (Schema a : kAxioms) {
    if (a == s) return true;
  }
  return false;
}

std::string_view schema_name(Schema s) { return entry(s).name; }

std::optional<Schema> schema_from_name(std::string_view name) {
  for (const auto& e : table()) {
    if (e.name == name) return e.id;
  }
  return std::nullopt;
}

const std::vector<std::string>& formula_variables(Schema s) {
  return entry(s).formula_vars;
}

const std::vector<std::string>& coalition_variables(Schema s) {
  return entry(s).coalition_vars;
}

bool side_conditions_hold(Schema s, const Substitution& sub) {
  auto co = [&](const char* v) -> const Coalition& {
    auto it = sub.coalitions.find(v);
    if (it == sub.coalitions.end()) {
      throw BadParams(std::string("coalition variable ") + v + " is unbound");
    }
    return it->second;
  };
  switch (s) {
    case Schema::kMonotonicityK:
      return co("C").subset_of(co("E"));
    case Schema::kMonotonicityB:
      return co("C").subset_of(co("E")) && co("D").subset_of(co("F"));
    case Schema::kJointResponsibility:
      return co("D").disjoint_from(co("F"));
    default:
      return true;
  }
}

Formula instantiate(Schema s, const Substitution& sub) {
  if (!side_conditions_hold(s, sub)) {
    throw BadParams(std::string("side condition of ") +
                    std::string(schema_name(s)) + " violated");
  }
  return subst(entry(s).pattern, sub);
}

std::optional<Substitution> match_schema(Schema s, const Formula& f) {
  Matcher m;
  if (!m.formula(entry(s).pattern, f) || !m.finish()) return std::nullopt;
  if (!side_conditions_hold(s, m.sub)) return std::nullopt;
  return std::move(m.sub);
}

}  // namespace dtw
