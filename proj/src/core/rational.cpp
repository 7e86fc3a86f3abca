#include "core/rational.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "core/error.hpp"

namespace qvib {

using boost::multiprecision::cpp_int;

Rational rational_from_decimal(std::string_view text) {
  std::size_t pos = 0;
  const auto fail = [&]() { throw_data("not a decimal literal: '" + std::string(text) + "'"); };
  if (text.empty()) fail();

  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';

  cpp_int mantissa = 0;
  long frac_digits = 0;
  bool any_digit = false, seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch >= '0' && ch <= '9') {
      mantissa = mantissa * 10 + (ch - '0');
      if (seen_point) ++frac_digits;
      any_digit = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail();

  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
      exp_neg = text[pos++] == '-';
    if (pos >= text.size()) fail();
    for (; pos < text.size(); ++pos) {
      if (text[pos] < '0' || text[pos] > '9') fail();
      exponent = exponent * 10 + (text[pos] - '0');
    }
    if (exp_neg) exponent = -exponent;
  }
  if (pos != text.size()) fail();

  const long net = exponent - frac_digits;
  Rational r(mantissa);
  if (net > 0) r *= Rational(boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(net)));
  if (net < 0) r /= Rational(boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(-net)));
  return negative ? -r : r;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw_argument("cannot convert a non-finite value to a rational");
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return rational_from_decimal(buf);
}

double to_double(const Rational& r) { return static_cast<double>(r); }

std::string to_string(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace qvib
