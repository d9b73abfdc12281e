#ifndef UNILIN_RATIONAL_HPP
#define UNILIN_RATIONAL_HPP

#include "unilin/interval.hpp"

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace unilin {

using Rational = mpq_class;

// Tightest floating-point interval containing q (width at most one ulp).
Interval enclose(const Rational& q);

// p/q in lowest terms (mpq_class(p, q) alone does not canonicalize).
Rational ratio(long p, long q);

// Exact rational value of a finite double.
Rational exact_rational(double x);

// Parses an unsigned literal: INT, INT/INT, DECIMAL, or DECIMAL with an
// e/E exponent. Throws std::invalid_argument on malformed text or a zero
// denominator.
Rational parse_rational(std::string_view text);

// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

} // namespace unilin

#endif
