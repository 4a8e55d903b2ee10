#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace charnum {

// mpq_class keeps values canonical (lowest terms, positive denominator)
// after every arithmetic operation.
using Rational = mpq_class;

std::string to_string(const Rational& q);

// Accepts "num" or "num/den"; throws Error(ErrorCode::Parse) otherwise.
Rational parse_rational(std::string_view text);

}  // namespace charnum
