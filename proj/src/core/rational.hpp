#ifndef QVIB_CORE_RATIONAL_HPP
#define QVIB_CORE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace qvib {

using Rational = boost::multiprecision::cpp_rational;

// Parses a plain decimal literal ("-0.125", "3", "1e-3") into the exact
// rational it denotes.
Rational rational_from_decimal(std::string_view text);

// Exact rational of the shortest decimal literal that round-trips to this
// double. Model parameters enter as doubles; this recovers the decimal the
// user wrote (0.02 -> 1/50) so series coefficients stay exact.
Rational rational_from_double(double value);

double to_double(const Rational& r);
std::string to_string(const Rational& r);  // "p/q", or "p" when q = 1

}  // namespace qvib

#endif
