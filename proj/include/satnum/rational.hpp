#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace satnum {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& z);

/// Exact text form `p/q`. Integral values print as `p` unless `always_fraction`
/// is set, in which case they print as `p/1`.
std::string to_string(const Rational& q, bool always_fraction = false);

/// Parses `p`, `-p`, or `p/q`. Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Nearest double (ties to even). mpq_get_d truncates, which is not enough
/// for report columns that claim to be correctly rounded.
double to_double_nearest(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

}  // namespace satnum
