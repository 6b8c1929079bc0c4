#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace freediv {

/// Arbitrary-precision rational number, always kept in lowest terms.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "p" or "p/q" with q > 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p" or "p/q" (optional leading sign). Throws PreconditionError on malformed text.
Rational parse_rational(std::string_view text);

/// Scales a rational vector to a primitive integer vector whose first nonzero entry is positive.
std::vector<Rational> primitive_integer_vector(std::vector<Rational> v);

}  // namespace freediv
