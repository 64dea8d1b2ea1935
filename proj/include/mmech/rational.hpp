#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mmech {

/// Exact nonnegative-or-signed rational. All costs, payments and ratios use it.
using Rational = mpq_class;

/// p/q in lowest terms; q must be nonzero.
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q" (decimal) into a canonical rational.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

/// Smallest integer >= value.
mpz_class ceil(const Rational& value);

/// Lossy conversion for display and bucketing only.
inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace mmech
