#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace exotic {

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
Rational rational_pow(const Rational& base, int exponent);

}  // namespace exotic
