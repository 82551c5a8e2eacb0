#pragma once

// Exact rationals backed by Boost.Multiprecision. cpp_rational keeps the
// denominator positive and the fraction in lowest terms.

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace vincstat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Always "p/q", including integers ("3/1") and zero ("0/1").
std::string to_string(const Rational& value);

// Accepts "p/q" or a plain integer.
Rational parse_rational(std::string_view text);

// Round-to-nearest conversion.
double to_double(const Rational& value);

BigInt factorial(int n);

// x^e for e >= 0.
Rational pow(const Rational& x, int e);

}  // namespace vincstat
