#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace cfcycles {

// Exact arbitrary-precision arithmetic. cpp_rational keeps the invariants the
// library relies on: denominator > 0 and gcd(num, den) == 1 after every operation.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest integer <= x.
Integer rational_floor(const Rational& x);

/// Parses "p/q" or "p" with optional sign. Throws ParseError on malformed input
/// or zero denominator.
Rational parse_rational(std::string_view text);

/// Lowest-terms form, "p/q" for non-integers and "p" otherwise.
std::string rational_str(const Rational& x);

double to_double(const Rational& x);

inline int sign(const Rational& x) { return x.sign(); }
inline int sign(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline double to_double(double x) { return x; }

/// Scalar formatting for serialized geometry: rationals in lowest terms,
/// doubles as the shortest round-trip decimal.
std::string scalar_str(double x);
inline std::string scalar_str(const Rational& x) { return rational_str(x); }

}  // namespace cfcycles
