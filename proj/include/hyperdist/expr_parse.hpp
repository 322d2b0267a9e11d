#pragma once

#include <string_view>

#include "hyperdist/expr.hpp"

namespace hyperdist {

/// Parses infix text such as "sin(x + eps)", "1/eps + 3" or
/// "if(x < 1, eps + 2, 2)". Variables: x (or n for sequences); constants:
/// numbers, eps, pi. Functions: sin, cos, exp, bump(e), plateau(a, e),
/// dirac(), mollify(base, scale, amplitude), if(lhs op rhs, then, else).
/// Constant subexpressions are folded into single constants.
/// Throws ParseError.
InternalExpr parse_infix(std::string_view text, const TruncationPolicy& policy = {});

}  // namespace hyperdist
