#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace nonlocal {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

/// Parses "p/q", "p" or a finite decimal such as "0.85" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

}  // namespace nonlocal
