#ifndef DTW_LEMMAS_H_
#define DTW_LEMMAS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtw/coalition.h"
#include "dtw/formula.h"
#include "dtw/proof.h"

namespace dtw {

// Generators for derived rules of the blame logic. Each returns a script
// that check_proof() accepts, given a library holding nothing (unless
// noted). Throw BadParams on violated side conditions.

// From phi_1, ..., phi_n |- psi (the script's hypotheses are the phi_i)
// to K_C phi_1, ..., K_C phi_n |- K_C psi.
ProofScript lemma1_script(const Coalition& c, const ProofScript& premises);

// |- K_C phi -> K_C K_C phi
ProofScript lemma2_script(const Coalition& c, const Formula& phi);

// |- Kd_C B^D_C phi -> (phi -> B^D_C phi)
ProofScript lemma3_script(const Coalition& c, const Coalition& d,
                          const Formula& phi);

// From a hypothesis-free script for phi <-> psi to |- B^D_C phi -> B^D_C psi.
ProofScript lemma4_script(const Coalition& c, const Coalition& d,
                          const ProofScript& equivalence);

// phi |- Kd_C phi
ProofScript lemma5_script(const Coalition& c, const Formula& phi);

// One coalition E_i that may know how F_i could prevent chi_i.
struct BlamePart {
  Coalition knowers;  // E_i
  Coalition actors;   // F_i
  Formula chi;
};

// {Kd_Ei B^Fi_Ei chi_i}, chi_1 | ... | chi_n |- B^{F1+..+Fn}_{E1+..+En}(chi_1 | ... | chi_n)
// with the F_i pairwise disjoint. The disjunction is nested to the left;
// for n = 0 it is `false`.
ProofScript lemma6_script(const std::vector<BlamePart>& parts);

// {Kd_Ei B^Fi_Ei chi_i}, K_C(phi -> chi_1 | ... | chi_n) |- K_C(phi -> B^D_C phi)
// with E_i <= C, F_i <= D and the F_i pairwise disjoint.
ProofScript lemma7_script(const Coalition& c, const Coalition& d,
                          const std::vector<BlamePart>& parts,
                          const Formula& phi);

// Optional parameters of gen_lemma_script(); anything unset takes the
// default instance of the lemma.
struct LemmaParams {
  std::optional<Coalition> C;
  std::optional<Coalition> D;
  std::optional<Formula> phi;
  std::optional<Formula> psi;
  std::optional<int> n;
  std::vector<BlamePart> parts;
  std::optional<ProofScript> premises;  // lemma 1 and 4 sub-derivations
};

// id is "lemma1" ... "lemma7". Defaults:
//   lemma1: C=[a], n=2 with p, p -> q |- q (n=3 adds q -> r |- r)
//   lemma2, lemma5: C=[a], phi=p
//   lemma3: C=[a], D=[b], phi=p
//   lemma4: C=[a], D=[b], phi=p & q, psi=q & p
//   lemma6: n=1, parts from default_parts(n)
//   lemma7: n=2, parts from default_parts(n), C and D their unions, phi=r
ProofScript gen_lemma_script(std::string_view id, const LemmaParams& params);

// Default parts (E_i, F_i, chi_i): n=1 gives ([a],[b],p); n=2 gives
// ([a],[c],p), ([b],[d],q); n=3 adds ([a,b],[e],r). Larger n uses
// ([ei],[fi],chii).
std::vector<BlamePart> default_parts(int n);

// Library key of an instance, e.g. "lemma3(C=[a];D=[b];phi=p)".
std::string lemma3_id(const Coalition& c, const Coalition& d,
                      const Formula& phi);

struct BundledScript {
  std::string file_name;  // e.g. "lemma3_a_b_p.prf"
  ProofScript script;
};

// Every bundled script, ordered so that theorem citations refer to
// earlier entries.
std::vector<BundledScript> bundled_scripts();

}  // namespace dtw

#endif  // DTW_LEMMAS_H_
