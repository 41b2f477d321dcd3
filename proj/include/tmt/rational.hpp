#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace tmt {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parse "p/q" or "p" with optional sign.  Throws error(parse_error) on bad input.
Rational parse_rational(const std::string& text);

/// Render as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

bool is_integer(const Rational& q);

}  // namespace tmt
