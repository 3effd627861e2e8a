#ifndef DTW_SCHEMA_H_
#define DTW_SCHEMA_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtw/coalition.h"
#include "dtw/formula.h"

namespace dtw {

// Axiom schemas of the blameworthiness logic, plus two derived theorems
// and one deliberately unsound variant used to show that the disjointness
// side condition of Joint Responsibility matters.
enum class Schema {
  kTruthK,                 // K_C f -> f
  kTruthB,                 // B^D_C f -> f
  kDistributivity,         // K_C(f -> g) -> (K_C f -> K_C g)
  kNegIntrospection,       // ~K_C f -> K_C ~K_C f
  kMonotonicityK,          // K_C f -> K_E f,             C <= E
  kMonotonicityB,          // B^D_C f -> B^F_E f,         C <= E, D <= F
  kNoneToAct,              // ~B^{}_C f
  kJointResponsibility,    // Kd_C B^D_C f & Kd_E B^F_E g
                           //   -> (f | g -> B^{D+F}_{C+E}(f | g)),  D ^ F = {}
  kStrictConditional,      // K_C(f -> g) -> (B^D_C g -> (f -> B^D_C f))
  kIntrospectionOfBlame,   // B^D_C f -> K_C(f -> B^D_C f)
  kLemma2,                 // K_C f -> K_C K_C f
  kLemma3,                 // Kd_C B^D_C f -> (f -> B^D_C f)
  kJointResponsibilityUnrestricted,
};

inline constexpr std::array<Schema, 10> kAxioms = {
    Schema::kTruthK,         Schema::kTruthB,
    Schema::kDistributivity, Schema::kNegIntrospection,
    Schema::kMonotonicityK,  Schema::kMonotonicityB,
    Schema::kNoneToAct,      Schema::kJointResponsibility,
    Schema::kStrictConditional, Schema::kIntrospectionOfBlame};

inline constexpr std::array<Schema, 13> kAllSchemas = {
    Schema::kTruthK,         Schema::kTruthB,
    Schema::kDistributivity, Schema::kNegIntrospection,
    Schema::kMonotonicityK,  Schema::kMonotonicityB,
    Schema::kNoneToAct,      Schema::kJointResponsibility,
    Schema::kStrictConditional, Schema::kIntrospectionOfBlame,
    Schema::kLemma2,         Schema::kLemma3,
    Schema::kJointResponsibilityUnrestricted};

bool is_axiom(Schema s);
// "Truth-K", "Monotonicity-B", "Lemma3", ...
std::string_view schema_name(Schema s);
std::optional<Schema> schema_from_name(std::string_view name);

// Metavariable assignment. Formula variables are "phi" and "psi";
// coalition variables are "C", "D", "E" and "F".
struct Substitution {
  std::map<std::string, Formula> formulas;
  std::map<std::string, Coalition> coalitions;

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

const std::vector<std::string>& formula_variables(Schema s);
const std::vector<std::string>& coalition_variables(Schema s);

bool side_conditions_hold(Schema s, const Substitution& sub);

// Throws BadParams when a variable is unbound or a side condition fails.
Formula instantiate(Schema s, const Substitution& sub);

// Structural match (no reasoning modulo equivalence); nullopt when `f` is
// not an instance or the side conditions fail.
std::optional<Substitution> match_schema(Schema s, const Formula& f);

}  // namespace dtw

#endif  // DTW_SCHEMA_H_
