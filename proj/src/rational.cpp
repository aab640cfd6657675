#include "kellipse/rational.hpp"

#include <cmath>
#include <limits>

#include "kellipse/error.hpp"

namespace kellipse {

Rational to_rational(double value) {
  if (!std::isfinite(value)) {
    throw ArgumentError("cannot convert a non-finite value to a rational");
  }
  if (value == 0.0) {
    return Rational(0);
  }
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an exact integer.
  constexpr int kBits = std::numeric_limits<double>::digits;
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, kBits));
  Rational result(scaled);
  const int shift = exponent - kBits;
  using boost::multiprecision::cpp_int;
  if (shift > 0) {
    result *= Rational(cpp_int(1) << shift);
  } else if (shift < 0) {
    result /= Rational(cpp_int(1) << -shift);
  }
  return result;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational parse_rational(std::string_view text) {
  using boost::multiprecision::cpp_int;
  const std::string original(text);
  auto fail = [&]() -> Rational { throw ParseError("not a rational number: '" + original + "'"); };
  if (text.empty()) {
    return fail();
  }

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) {
      throw ParseError("zero denominator in '" + original + "'");
    }
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  cpp_int digits = 0;
  int frac_digits = 0;
  bool any_digit = false;
  bool in_fraction = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (in_fraction) {
        ++frac_digits;
      }
    } else if (c == '.' && !in_fraction) {
      in_fraction = true;
    } else {
      break;
    }
  }
  if (!any_digit) {
    return fail();
  }
  long long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') {
      return fail();
    }
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) {
      return fail();
    }
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (c < '0' || c > '9' || exponent > 100000) {
        return fail();
      }
      exponent = exponent * 10 + (c - '0');
    }
    if (exp_negative) {
      exponent = -exponent;
    }
  }
  exponent -= frac_digits;
  Rational result(digits);
  const cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(std::llabs(exponent)));
  if (exponent > 0) {
    result *= Rational(scale);
  } else if (exponent < 0) {
    result /= Rational(scale);
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace kellipse
