#pragma once

#include <string_view>

#include "artin/polynomial.hpp"

namespace artin {

struct CFSpec;

// poly  := ['-'] term (('+' | '-') term)*
// term  := coeff | coeff ['*'] 'X' ['^' nat] | 'X' ['^' nat]
// coeff := nat | '[' nat (',' nat)* ']'
// Integer literals are reduced mod p; a bracketed digit vector names an
// extension-field element by its coordinates (low to high). Whitespace is
// ignored. Errors carry the byte offset of the offending character.
Polynomial parse_poly(std::string_view text, const FieldRef& field);

// "P/Q", "P", or "(P)/(Q)".
RationalFunction parse_rational(std::string_view text, const FieldRef& field);

// "a0 ; a1, a2, ... | p1, p2, ..." with '|' starting the period.
CFSpec parse_cf_spec(std::string_view text, const FieldRef& field);

}  // namespace artin
