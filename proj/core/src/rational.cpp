#include "nonlocal/rational.hpp"

#include <cctype>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view digits) {
  if (digits.empty()) throw DomainError("empty integer in rational literal");
  boost::multiprecision::cpp_int v = 0;
  for (const char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw DomainError("malformed rational literal");
    }
    v = v * 10 + (ch - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational out;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in rational literal");
    out = Rational(parse_integer(text.substr(0, slash)), den);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto w = whole.empty() ? boost::multiprecision::cpp_int(0) : parse_integer(whole);
    const auto f = frac.empty() ? boost::multiprecision::cpp_int(0) : parse_integer(frac);
    out = Rational(w * scale + f, scale);
  } else {
    out = Rational(parse_integer(text));
  }
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace nonlocal
