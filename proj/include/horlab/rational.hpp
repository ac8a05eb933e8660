#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace horlab {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-7", "2/5" or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& q);

std::size_t hash_value(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

/// Parses a comma-separated list of rationals, e.g. "0,1/2,-3".
std::vector<Rational> parse_rational_list(std::string_view text);

}  // namespace horlab
