#pragma once

// Recursive-descent parser for the element DSL. Whitespace is ignored.
//
//   elem   := term { ("+" | "-") term } | "0"
//   term   := [scalar ["*"]] factor { ["*"] factor }
//   factor := "i[" fiber "](" coords ")" | "adj(" elem ")"
//           | "alpha[" fiber "](" elem ")" | "E(" elem ")" | "(" elem ")"
//   coords := coeff "@" index { "," coeff "@" index }
//
// Coefficients are sums of optionally scaled products of generators:
// "S", "S*", "z1" .. "z4", each with an optional "^" integer power, the unit
// "1", complex literals such as "2", "-1.5", "2i", "(1.5-2i)", and
// parenthesized sub-expressions. "S*" binds tighter than juxtaposition, so a
// "*" right after S is always the adjoint.

#include <string_view>

#include "ntkms/coeff_algebra.hpp"
#include "ntkms/nt_element.hpp"

namespace ntkms {

// Throws ParseError carrying the byte offset of the failure.
CoefficientElement parse_coefficient(EngineSpec engine, std::string_view text);
NTElement parse_element(const NtAlgebra& algebra, std::string_view text);
Complex parse_complex(std::string_view text);

}  // namespace ntkms
