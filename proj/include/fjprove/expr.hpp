#pragma once

// Small arithmetic language for ad-hoc reduction inputs, e.g.
//   log(alpha)/log(2)     log(3/sqrt5)/log(2)     2*5/log(2)
// Numbers, + - * / ^ (integer exponents), unary minus, parentheses, the
// constants alpha, beta, sqrt5, log2, pi, e and the functions log, sqrt, exp.

#include <string_view>

#include <gmpxx.h>

#include "fjprove/realnum.hpp"

namespace fjprove {

// Parses eagerly (throws std::invalid_argument on a syntax error) and
// evaluates at whatever precision the returned closure is asked for.
LazyReal parse_real_expression(std::string_view text);

// "100", "1e29", "3.7e28": must denote an integer exactly.
mpz_class parse_exact_integer(std::string_view text);

} // namespace fjprove
