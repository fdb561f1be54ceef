#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fracspec {

/// Arbitrary-precision integer and rational.  cpp_rational keeps values in
/// lowest terms with a positive denominator.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "7", "-3/4", "0.125", "1e-3" (decimal forms are converted exactly).
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

double to_double(const Rational& r);
bool is_integer(const Rational& r);

/// floor(r) as a rational.
Rational floor(const Rational& r);

/// r - floor(r), always in [0, 1).
Rational frac_part(const Rational& r);

}  // namespace fracspec
