#pragma once

#include <string>
#include <string_view>

#include "maxrank/polynomial.hpp"

namespace maxrank {

// Text format:
//   poly := ('+'|'-')? term (('+'|'-') term)*
//   term := coeff? ('*'? var ('^' exp)?)*
// Whitespace between tokens is ignored; the '*' between factors is optional.
// A term must contain a coefficient or at least one variable.

// Parses against a fresh universe whose variables are interned in first
// occurrence order.
Polynomial parse_polynomial(std::string_view text, Field field);

// Parses against an existing universe; unknown names are rejected.
Polynomial parse_polynomial(std::string_view text, Field field, UniversePtr universe);

// Canonical rendering: terms in descending graded-lex order joined by " + ",
// coefficients as residues in [0, p), unit coefficients omitted except on the
// constant term, '^' only for exponents >= 2. The zero polynomial prints "0".
std::string to_text(const Polynomial& p);
std::string to_text(const Monomial& m, const VarUniverse& universe);

} // namespace maxrank
