#pragma once

#include "bundlecalc/expr.hpp"

#include <string_view>

namespace bundlecalc {

// Parses the ASCII expression grammar:
//
//   expr   := term ('+' term)*
//   term   := factor (['*'] factor)*        juxtaposition is a tensor product
//   factor := 'lam' ['^' int] | 'iota' | 'rho' | 'sigmaL' | 'sigmaR' | 'sigma'
//           | 'Tstar' | nat | 'conn(' ('U1'|'U2'|'SU3') ')'
//           | 'conj(' expr ')' | 'ext' k '(' expr ')' | '(' expr ')'
//
// The tree is returned as written; no normalization happens here.
// Throws ParseError carrying the byte offset of the offending token.
BundleExpr parse(std::string_view text);

} // namespace bundlecalc
