#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace sft {

/// Arbitrary-precision exact rational.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-1/2", "4/6" (reduced). Throws ValidationError.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

}  // namespace sft
