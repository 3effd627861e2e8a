#include "dtw/lemmas.h"

#include <set>

#include "dtw/deduction.h"
#include "dtw/error.h"
#include "dtw/syntax.h"

namespace dtw {
namespace {

using Kind = Formula::Kind;

Formula imp(const Formula& a, const Formula& b) {
  return Formula::implies(a, b);
}
Formula neg(const Formula& a) { return Formula::negation(a); }
Formula prop(const std::string& name) { return Formula::prop(name); }

Substitution sub_of(std::initializer_list<std::pair<const char*, Formula>> fs,
                    std::initializer_list<std::pair<const char*, Coalition>> cs) {
  Substitution s;
  for (const auto& [k, v] : fs) s.formulas.emplace(k, v);
  for (const auto& [k, v] : cs) s.coalitions.emplace(k, v);
  return s;
}

Formula blame_part(const BlamePart& p) {
  return dual_know(p.knowers, Formula::blame(p.knowers, p.actors, p.chi));
}

Formula disjunction(const std::vector<BlamePart>& parts) {
  std::vector<Formula> chis;
  for (const auto& p : parts) chis.push_back(p.chi);
  return disj_all(chis);
}

Coalition union_of(const std::vector<BlamePart>& parts, bool knowers) {
  Coalition out;
  for (const auto& p : parts) out = out.unite(knowers ? p.knowers : p.actors);
  return out;
}

void require_disjoint(const std::vector<BlamePart>& parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (!parts[i].actors.disjoint_from(parts[j].actors)) {
        throw BadParams("actor coalitions " + parts[i].actors.to_string() +
                        " and " + parts[j].actors.to_string() + " overlap");
      }
    }
  }
}

// Restates every hypothesis; returns their lines.
std::vector<std::size_t> restate(ScriptBuilder& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < b.hypotheses().size(); ++i) {
    out.push_back(b.hyp(i));
  }
  return out;
}

// (a -> b) from a and the tautology a -> b.
std::size_t by_taut(ScriptBuilder& b, std::size_t a, const Formula& to) {
  return b.mp(a, b.taut(imp(b.formula(a), to)));
}

// a & b from lines a and b.
std::size_t and_intro(ScriptBuilder& b, std::size_t a, std::size_t c) {
  const Formula& fa = b.formula(a);
  const Formula& fc = b.formula(c);
  std::size_t t = b.taut(imp(fa, imp(fc, conj(fa, fc))));
  return b.mp(c, b.mp(a, t));
}

std::string coalition_tag(const Coalition& c) {
  std::string out;
  for (const auto& a : c) out += (out.empty() ? "" : "-") + a;
  return out.empty() ? "none" : out;
}

}  // namespace

std::string lemma3_id(const Coalition& c, const Coalition& d,
                      const Formula& phi) {
  return "lemma3(C=" + c.to_string() + ";D=" + d.to_string() +
         ";phi=" + render(phi) + ")";
}

ProofScript lemma1_script(const Coalition& c, const ProofScript& premises) {
  const std::size_t n = premises.hypotheses.size();
  ProofScript chained = premises;
  for (std::size_t i = 0; i < n; ++i) {
    chained = apply_deduction_theorem(chained);
  }
  std::vector<Formula> known;
  for (const auto& h : premises.hypotheses) known.push_back(Formula::know(c, h));
  ScriptBuilder b(known);
  std::size_t cur = b.nec(b.splice(chained, {}), c);
  // cur: K_C(phi_i -> rest)
  for (std::size_t i = 0; i < n; ++i) {
    const Formula inner = b.formula(cur).operand();
    std::size_t dist = b.axiom(
        Schema::kDistributivity,
        sub_of({{"phi", inner.lhs()}, {"psi", inner.rhs()}}, {{"C", c}}));
    cur = b.mp(b.hyp(i), b.mp(cur, dist));
  }
  return b.finish_at(cur);
}

ProofScript lemma2_script(const Coalition& c, const Formula& phi) {
  const Formula k = Formula::know(c, phi);      // K phi
  const Formula nk = neg(k);                    // ~K phi
  const Formula knk = Formula::know(c, nk);     // K ~K phi
  const Formula nknk = neg(knk);                // ~K ~K phi
  ScriptBuilder b;
  // K phi -> ~K ~K phi
  std::size_t t1 = b.axiom(Schema::kTruthK, sub_of({{"phi", nk}}, {{"C", c}}));
  std::size_t a = by_taut(b, t1, imp(k, nknk));
  // ~K ~K phi -> K ~K ~K phi
  std::size_t ni = b.axiom(Schema::kNegIntrospection,
                           sub_of({{"phi", nk}}, {{"C", c}}));
  // K ~K ~K phi -> K K phi
  std::size_t n2 = b.axiom(Schema::kNegIntrospection,
                           sub_of({{"phi", phi}}, {{"C", c}}));
  std::size_t e = by_taut(b, n2, imp(nknk, k));
  std::size_t ke = b.nec(e, c);
  std::size_t dist = b.axiom(Schema::kDistributivity,
                             sub_of({{"phi", nknk}, {"psi", k}}, {{"C", c}}));
  std::size_t h = b.mp(ke, dist);
  // Chain the three implications.
  const Formula A = k, B = nknk, C = Formula::know(c, nknk),
                D = Formula::know(c, k);
  std::size_t syl = b.taut(
      imp(imp(A, B), imp(imp(B, C), imp(imp(C, D), imp(A, D)))));
  std::size_t out = b.mp(h, b.mp(ni, b.mp(a, syl)));
  return b.finish_at(out, "lemma2(C=" + c.to_string() + ";phi=" +
                              render(phi) + ")");
}

ProofScript lemma3_script(const Coalition& c, const Coalition& d,
                          const Formula& phi) {
  const Formula bl = Formula::blame(c, d, phi);  // B
  const Formula x = Formula::know(c, imp(phi, bl));  // K(phi -> B)
  const Formula nx = neg(x);
  const Formula nb = neg(bl);
  const Formula knx = Formula::know(c, nx);
  const Formula knb = Formula::know(c, nb);
  ScriptBuilder b;
  std::size_t iob = b.axiom(Schema::kIntrospectionOfBlame,
                            sub_of({{"phi", phi}}, {{"C", c}, {"D", d}}));
  std::size_t contra = by_taut(b, iob, imp(nx, nb));
  std::size_t nec = b.nec(contra, c);
  std::size_t dist = b.axiom(Schema::kDistributivity,
                             sub_of({{"phi", nx}, {"psi", nb}}, {{"C", c}}));
  std::size_t k_imp = b.mp(nec, dist);  // K~X -> K~B
  std::size_t ni = b.axiom(Schema::kNegIntrospection,
                           sub_of({{"phi", imp(phi, bl)}}, {{"C", c}}));
  std::size_t chain = b.taut(
      imp(imp(nx, knx), imp(imp(knx, knb), imp(nx, knb))));
  std::size_t nx_knb = b.mp(k_imp, b.mp(ni, chain));  // ~X -> K~B
  std::size_t finish = b.taut(imp(
      imp(nx, knb), imp(imp(x, imp(phi, bl)), imp(neg(knb), imp(phi, bl)))));
  std::size_t truth = b.axiom(Schema::kTruthK,
                              sub_of({{"phi", imp(phi, bl)}}, {{"C", c}}));
  std::size_t out = b.mp(truth, b.mp(nx_knb, finish));
  return b.finish_at(out, lemma3_id(c, d, phi));
}

ProofScript lemma4_script(const Coalition& c, const Coalition& d,
                          const ProofScript& equivalence) {
  if (!equivalence.hypotheses.empty()) {
    throw BadParams("the equivalence must be derived without hypotheses");
  }
  if (equivalence.lines.empty()) throw BadParams("empty equivalence script");
  const Formula goal = equivalence.lines.back().formula;
  // a <-> b is ~((a -> b) -> ~(b -> a)).
  auto malformed = [] {
    return BadParams("the equivalence script must prove a formula f <-> g");
  };
  if (!goal.is(Kind::kNot) || !goal.operand().is(Kind::kImplies)) {
    throw malformed();
  }
  const Formula& fwd = goal.operand().lhs();
  const Formula& back_neg = goal.operand().rhs();
  if (!fwd.is(Kind::kImplies) || !back_neg.is(Kind::kNot)) throw malformed();
  const Formula phi = fwd.lhs();
  const Formula psi = fwd.rhs();
  if (!(goal == iff(phi, psi))) throw malformed();

  const Formula bphi = Formula::blame(c, d, phi);
  const Formula bpsi = Formula::blame(c, d, psi);
  ScriptBuilder b;
  std::size_t eq = b.splice(equivalence, {});
  std::size_t back = by_taut(b, eq, imp(psi, phi));
  std::size_t kback = b.nec(back, c);
  std::size_t sc = b.axiom(Schema::kStrictConditional,
                           sub_of({{"phi", psi}, {"psi", phi}},
                                  {{"C", c}, {"D", d}}));
  std::size_t s1 = b.mp(kback, sc);  // Bphi -> (psi -> Bpsi)
  std::size_t s2 = by_taut(b, s1, imp(imp(bphi, psi), imp(bphi, bpsi)));
  std::size_t truth = b.axiom(Schema::kTruthB,
                              sub_of({{"phi", phi}}, {{"C", c}, {"D", d}}));
  std::size_t t = b.taut(
      imp(imp(bphi, phi), imp(iff(phi, psi), imp(bphi, psi))));
  std::size_t bphi_psi = b.mp(eq, b.mp(truth, t));
  std::size_t out = b.mp(bphi_psi, s2);
  return b.finish_at(out, "lemma4(C=" + c.to_string() + ";D=" +
                              d.to_string() + ";phi=" + render(phi) +
                              ";psi=" + render(psi) + ")");
}

ProofScript lemma5_script(const Coalition& c, const Formula& phi) {
  ScriptBuilder b({phi});
  std::size_t truth = b.axiom(Schema::kTruthK,
                              sub_of({{"phi", neg(phi)}}, {{"C", c}}));
  std::size_t contra = by_taut(b, truth, imp(phi, dual_know(c, phi)));
  return b.finish_at(b.mp(b.hyp(0), contra));
}

ProofScript lemma6_script(const std::vector<BlamePart>& parts) {
  require_disjoint(parts);
  const std::size_t n = parts.size();
  const Formula omega = disjunction(parts);
  const Coalition all_e = union_of(parts, true);
  const Coalition all_f = union_of(parts, false);
  const Formula goal = Formula::blame(all_e, all_f, omega);
  std::vector<Formula> hyps;
  for (const auto& p : parts) hyps.push_back(blame_part(p));
  hyps.push_back(omega);

  if (n == 0) {
    ScriptBuilder b(hyps);
    return b.finish_at(by_taut(b, b.hyp(0), goal));
  }
  if (n == 1) {
    const BlamePart& p = parts[0];
    ScriptBuilder b(hyps);
    std::size_t l3 = b.splice(lemma3_script(p.knowers, p.actors, p.chi), {});
    std::size_t step = b.mp(b.hyp(0), l3);
    return b.finish_at(b.mp(b.hyp(1), step));
  }

  const std::vector<BlamePart> front(parts.begin(), parts.end() - 1);
  const std::vector<BlamePart> rest(parts.begin() + 1, parts.end());
  const Formula left = disjunction(front);
  const Formula right = disjunction(rest);
  auto with = [&](const Formula& extra) {
    std::vector<Formula> h(hyps.begin(), hyps.end() - 1);
    h.push_back(extra);
    return h;
  };

  // X, left |- goal
  ScriptBuilder b1(with(left));
  {
    std::vector<std::size_t> h = restate(b1);
    std::vector<std::size_t> map(h.begin(), h.begin() + (n - 1));
    map.push_back(h[n]);
    const Coalition e1 = union_of(front, true), f1 = union_of(front, false);
    std::size_t bl = b1.splice(lemma6_script(front), map);
    std::size_t kd = b1.splice(lemma5_script(e1, b1.formula(bl)), {bl});
    const BlamePart& last = parts.back();
    std::size_t joint = b1.axiom(
        Schema::kJointResponsibility,
        sub_of({{"phi", left}, {"psi", last.chi}},
               {{"C", e1}, {"D", f1}, {"E", last.knowers}, {"F", last.actors}}));
    std::size_t both = and_intro(b1, kd, h[n - 1]);
    std::size_t cond = b1.mp(both, joint);  // omega -> goal
    b1.mp(by_taut(b1, h[n], omega), cond);
  }
  ProofScript part1 = apply_deduction_theorem(b1.finish());

  // X, right |- goal
  ScriptBuilder b2(with(right));
  {
    std::vector<std::size_t> h = restate(b2);
    std::vector<std::size_t> map(h.begin() + 1, h.begin() + n);
    map.push_back(h[n]);
    const Coalition e2 = union_of(rest, true), f2 = union_of(rest, false);
    std::size_t br = b2.splice(lemma6_script(rest), map);
    std::size_t kd = b2.splice(lemma5_script(e2, b2.formula(br)), {br});
    const BlamePart& first = parts.front();
    std::size_t joint = b2.axiom(
        Schema::kJointResponsibility,
        sub_of({{"phi", first.chi}, {"psi", right}},
               {{"C", first.knowers}, {"D", first.actors}, {"E", e2},
                {"F", f2}}));
    std::size_t both = and_intro(b2, h[0], kd);
    std::size_t cond = b2.mp(both, joint);  // chi1 | right -> B(chi1 | right)
    const Formula split = disj(first.chi, right);
    std::size_t have = by_taut(b2, h[n], split);
    std::size_t blamed = b2.mp(have, cond);
    if (!(split == omega)) {
      ScriptBuilder eq;
      eq.taut(iff(split, omega));
      std::size_t l4 = b2.splice(lemma4_script(all_e, all_f, eq.finish()), {});
      b2.mp(blamed, l4);
    }
  }
  ProofScript part2 = apply_deduction_theorem(b2.finish());

  ScriptBuilder b(hyps);
  std::vector<std::size_t> h = restate(b);
  const std::vector<std::size_t> xs(h.begin(), h.end() - 1);
  std::size_t l1 = b.splice(part1, xs);
  std::size_t l2 = b.splice(part2, xs);
  std::size_t cases = b.taut(
      imp(imp(left, goal), imp(imp(right, goal), imp(omega, goal))));
  std::size_t out = b.mp(h[n], b.mp(l2, b.mp(l1, cases)));
  return b.finish_at(out);
}

ProofScript lemma7_script(const Coalition& c, const Coalition& d,
                          const std::vector<BlamePart>& parts,
                          const Formula& phi) {
  require_disjoint(parts);
  for (const auto& p : parts) {
    if (!p.knowers.subset_of(c)) {
      throw BadParams(p.knowers.to_string() + " is not a subset of " +
                      c.to_string());
    }
    if (!p.actors.subset_of(d)) {
      throw BadParams(p.actors.to_string() + " is not a subset of " +
                      d.to_string());
    }
  }
  const std::size_t n = parts.size();
  const Formula omega = disjunction(parts);
  const Formula strict = Formula::know(c, imp(phi, omega));  // K_C(phi -> omega)
  const Coalition all_e = union_of(parts, true);
  const Coalition all_f = union_of(parts, false);
  std::vector<Formula> xs;
  for (const auto& p : parts) xs.push_back(blame_part(p));

  // X, K_C(phi -> omega), phi |- B^D_C phi
  std::vector<Formula> hyps = xs;
  hyps.push_back(strict);
  hyps.push_back(phi);
  ScriptBuilder s2(hyps);
  {
    std::vector<std::size_t> h = restate(s2);
    std::size_t truth = s2.axiom(Schema::kTruthK,
                                 sub_of({{"phi", imp(phi, omega)}}, {{"C", c}}));
    std::size_t have = s2.mp(h[n + 1], s2.mp(h[n], truth));  // omega
    std::vector<std::size_t> map(h.begin(), h.begin() + n);
    map.push_back(have);
    std::size_t joint = s2.splice(lemma6_script(parts), map);
    std::size_t mono = s2.axiom(
        Schema::kMonotonicityB,
        sub_of({{"phi", omega}}, {{"C", all_e}, {"D", all_f}, {"E", c}, {"F", d}}));
    std::size_t bomega = s2.mp(joint, mono);
    std::size_t sc = s2.axiom(Schema::kStrictConditional,
                              sub_of({{"phi", phi}, {"psi", omega}},
                                     {{"C", c}, {"D", d}}));
    std::size_t cond = s2.mp(bomega, s2.mp(h[n], sc));  // phi -> B phi
    s2.mp(h[n + 1], cond);
  }
  ProofScript inner = apply_deduction_theorem(s2.finish());
  ProofScript lifted = lemma1_script(c, inner);

  std::vector<Formula> main_hyps = xs;
  main_hyps.push_back(strict);
  ScriptBuilder b(main_hyps);
  std::vector<std::size_t> h = restate(b);
  std::vector<std::size_t> map;
  for (std::size_t i = 0; i < n; ++i) {
    const BlamePart& p = parts[i];
    const Formula nb = neg(Formula::blame(p.knowers, p.actors, p.chi));
    std::size_t ni = b.axiom(Schema::kNegIntrospection,
                             sub_of({{"phi", nb}}, {{"C", p.knowers}}));
    std::size_t ke = b.mp(h[i], ni);  // K_Ei X_i
    std::size_t mono = b.axiom(
        Schema::kMonotonicityK,
        sub_of({{"phi", xs[i]}}, {{"C", p.knowers}, {"E", c}}));
    map.push_back(b.mp(ke, mono));
  }
  std::size_t l2 = b.splice(lemma2_script(c, imp(phi, omega)), {});
  map.push_back(b.mp(h[n], l2));
  return b.finish_at(b.splice(lifted, map));
}

std::vector<BlamePart> default_parts(int n) {
  if (n < 0) throw BadParams("n must be non-negative");
  auto part = [](Coalition e, Coalition f, const char* chi) {
    return BlamePart{std::move(e), std::move(f), prop(chi)};
  };
  switch (n) {
    case 0: return {};
    case 1: return {part({"a"}, {"b"}, "p")};
    case 2: return {part({"a"}, {"c"}, "p"), part({"b"}, {"d"}, "q")};
    case 3:
      return {part({"a"}, {"c"}, "p"), part({"b"}, {"d"}, "q"),
              part({"a", "b"}, {"e"}, "r")};
    default: {
      std::vector<BlamePart> out;
      for (int i = 1; i <= n; ++i) {
        const std::string k = std::to_string(i);
        out.push_back(BlamePart{Coalition({"e" + k}), Coalition({"f" + k}),
                                prop("chi" + k)});
      }
      return out;
    }
  }
}

ProofScript gen_lemma_script(std::string_view id, const LemmaParams& params) {
  const Coalition a({"a"}), b({"b"});
  const Formula p = prop("p");
  auto C = [&](const Coalition& dflt) { return params.C.value_or(dflt); };
  auto D = [&](const Coalition& dflt) { return params.D.value_or(dflt); };
  if (params.n && *params.n < 0) throw BadParams("n must be non-negative");

  if (id == "lemma1") {
    if (params.premises) return lemma1_script(C(a), *params.premises);
    // p0, p0 -> p1, ..., p(n-2) -> p(n-1) |- p(n-1)
    const int n = params.n.value_or(2);
    static const char* const kNames[] = {"p", "q", "r", "s", "t", "u"};
    auto name = [](int i) {
      return i < 6 ? std::string(kNames[i]) : "p" + std::to_string(i);
    };
    std::vector<Formula> hyps;
    for (int i = 0; i < n; ++i) {
      hyps.push_back(i == 0 ? prop(name(0))
                            : imp(prop(name(i - 1)), prop(name(i))));
    }
    ScriptBuilder pb(hyps);
    if (n == 0) {
      pb.taut(imp(p, p));
    } else {
      std::size_t cur = pb.hyp(0);
      for (int i = 1; i < n; ++i) cur = pb.mp(cur, pb.hyp(i));
    }
    return lemma1_script(C(a), pb.finish());
  }
  if (id == "lemma2") return lemma2_script(C(a), params.phi.value_or(p));
  if (id == "lemma3") {
    return lemma3_script(C(a), D(b), params.phi.value_or(p));
  }
  if (id == "lemma4") {
    if (params.premises) return lemma4_script(C(a), D(b), *params.premises);
    const Formula q = prop("q");
    const Formula phi = params.phi.value_or(conj(p, q));
    const Formula psi = params.psi.value_or(conj(q, p));
    ScriptBuilder eq;
    eq.taut(iff(phi, psi));
    return lemma4_script(C(a), D(b), eq.finish());
  }
  if (id == "lemma5") return lemma5_script(C(a), params.phi.value_or(p));
  if (id == "lemma6") {
    if (!params.parts.empty()) {
      if (params.n && *params.n != static_cast<int>(params.parts.size())) {
        throw BadParams("n does not match the number of parts");
      }
      return lemma6_script(params.parts);
    }
    return lemma6_script(default_parts(params.n.value_or(1)));
  }
  if (id == "lemma7") {
    std::vector<BlamePart> parts = params.parts;
    if (parts.empty()) parts = default_parts(params.n.value_or(2));
    std::set<std::string> used;
    for (const auto& part : parts) {
      for (const auto& name : propositions(part.chi)) used.insert(name);
    }
    Formula phi = params.phi.value_or(prop("r"));
    if (!params.phi) {
      for (const char* name : {"r", "s", "t", "u", "phi"}) {
        if (!used.count(name)) {
          phi = prop(name);
          break;
        }
      }
    }
    return lemma7_script(params.C.value_or(union_of(parts, true)),
                         params.D.value_or(union_of(parts, false)), parts, phi);
  }
  throw BadParams("unknown lemma '" + std::string(id) + "'");
}

std::vector<BundledScript> bundled_scripts() {
  std::vector<BundledScript> out;
  auto add = [&](std::string name, ProofScript s) {
    out.push_back({std::move(name), std::move(s)});
  };
  LemmaParams none;
  const Coalition a({"a"}), b({"b"});
  const Formula p = prop("p");
  add("lemma2_a_p.prf", gen_lemma_script("lemma2", none));
  add("lemma3_" + coalition_tag(a) + "_" + coalition_tag(b) + "_p.prf",
      gen_lemma_script("lemma3", none));
  add("lemma4_a_b.prf", gen_lemma_script("lemma4", none));
  add("lemma5_a_p.prf", gen_lemma_script("lemma5", none));
  for (int n : {2, 3}) {
    LemmaParams params;
    params.n = n;
    add("lemma1_n" + std::to_string(n) + ".prf",
        gen_lemma_script("lemma1", params));
  }
  for (int n : {0, 1, 2, 3}) {
    LemmaParams params;
    params.n = n;
    add("lemma6_n" + std::to_string(n) + ".prf",
        gen_lemma_script("lemma6", params));
  }
  {
    LemmaParams params;
    params.n = 2;
    add("lemma7_n2.prf", gen_lemma_script("lemma7", params));
  }
  {
    // Lemma 6 for one part, citing the registered lemma 3 instance.
    const BlamePart part = default_parts(1)[0];
    const Formula x = blame_part(part);
    ScriptBuilder sb({x, part.chi});
    ProofScript l3 = lemma3_script(part.knowers, part.actors, part.chi);
    std::size_t t = sb.thm(l3.id, *l3.goal);
    std::size_t step = sb.mp(sb.hyp(0), t);
    add("lemma6_n1_cited.prf", sb.finish_at(sb.mp(sb.hyp(1), step)));
  }
  return out;
}

}  // namespace dtw
