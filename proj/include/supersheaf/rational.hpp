#pragma once

// Exact rational scalars. Every cochain space in the library is a vector
// space over Q; no floating point is used anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace supersheaf {

using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in lowest terms. Throws std::domain_error on den == 0.
Rational make_rational(long num, long den = 1);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Lowest-terms text, e.g. "-3/4" or "2".
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace supersheaf
