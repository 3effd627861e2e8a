#ifndef DTW_PROOF_FORMAT_H_
#define DTW_PROOF_FORMAT_H_

#include <string>
#include <string_view>

#include "dtw/proof.h"

namespace dtw {

// Line-oriented proof script format:
//
//   theorem: lemma3(C=[a];D=[b];phi=p)   # optional library id
//   hyp: <formula>                       # zero or more, in order
//   goal: <formula>
//   1. <formula>   axiom Truth-K
//   2. <formula>   taut
//   3. <formula>   hyp 1
//   4. <formula>   mp 1 2
//   5. <formula>   nec 3 [a,b]
//   6. <formula>   thm lemma3(C=[a];D=[b];phi=p)
//
// Line and hypothesis numbers are 1-based. `#` starts a comment. Throws
// SyntaxError with a 1-based offset into `text`.
ProofScript parse_proof_script(std::string_view text);

std::string render_proof_script(const ProofScript& s);

std::string render_justification(const Justification& j);

}  // namespace dtw

#endif  // DTW_PROOF_FORMAT_H_
