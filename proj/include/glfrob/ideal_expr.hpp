#pragma once

#include <string>

#include "glfrob/glideal.hpp"

namespace glfrob {

// Grammar (whitespace insignificant):
//   expr   := term ('+' term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' posint)?
//   atom   := 'm' | 'm[p^k]' (k >= 1) | '(' expr ')'
// Result is canonical.  Errors carry the offending position.
GLIdeal parse_ideal(const std::string& text, const PrimeContext& ctx);

// Monomials for membership queries: '1', or 'x<i>'['^'e] joined by '*',
// variable indices >= 1.  Only the exponent multiset matters.
MonomialExponent parse_monomial(const std::string& text);

}  // namespace glfrob
