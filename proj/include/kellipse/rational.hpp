#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kellipse {

/// Arbitrary-precision rational used wherever results must be exact.
using Rational = boost::multiprecision::cpp_rational;

/// Exact conversion; every finite double is a dyadic rational.
Rational to_rational(double value);

double to_double(const Rational& value);

/// Accepts integers ("-4"), fractions ("4/7") and decimals ("-1.25", "1e-3").
Rational parse_rational(std::string_view text);

/// "4/7", "-6", "0".
std::string to_string(const Rational& value);

Rational abs(const Rational& value);

}  // namespace kellipse
