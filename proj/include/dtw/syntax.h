#ifndef DTW_SYNTAX_H_
#define DTW_SYNTAX_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "dtw/coalition.h"
#include "dtw/formula.h"

namespace dtw {

// Concrete syntax, loosest to tightest:
//
//   f <-> g   (left-assoc)      f -> g   (right-assoc)
//   f | g     f & g             ~f  K[C] f  Kd[C] f  B[C][D] f
//
// plus `false`, identifiers and parentheses. `B[C][D] f` puts the knowers
// first and the actors second. `&`, `|`, `<->`, `false` and `Kd` are
// desugared while parsing, so the result is always a core formula.
//
// Throws SyntaxError (or EmptyInput) on malformed text.
Formula parse_formula(std::string_view text);

struct PrefixParse {
  Formula formula;
  std::size_t consumed;  // bytes of `text` used, trailing blanks included
};

// Parses the longest formula at the start of `text` and stops at the first
// token that cannot continue it. Used by line-oriented file formats that put
// annotations after a formula.
PrefixParse parse_formula_prefix(std::string_view text);

// "[a,b]" or "[]".
Coalition parse_coalition(std::string_view text);

// Canonical text with minimal parentheses; parse_formula(render(f)) == f for
// every f the parser can produce.
std::string render(const Formula& f);

bool is_identifier(std::string_view token);

}  // namespace dtw

#endif  // DTW_SYNTAX_H_
