#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "pgst/errors.hpp"

namespace pgst::exact {

// GMP keeps mpq_class canonical: gcd(|num|, den) = 1 and den > 0 after every operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Accepts "7", "-3/4" and finite decimals such as "0.25" (converted exactly).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t from) {
    std::size_t to = from;
    while (to < s.size() && std::isdigit(static_cast<unsigned char>(s[to]))) ++to;
    return to;
  };
  std::size_t int_end = digits(pos);
  if (int_end == pos) throw ParseError("malformed rational literal '" + s + "'");
  Rational value;
  if (int_end == s.size()) {
    value = Rational(Integer(s.substr(pos), 10));
  } else if (s[int_end] == '/') {
    std::size_t den_end = digits(int_end + 1);
    if (den_end != s.size() || den_end == int_end + 1)
      throw ParseError("malformed rational literal '" + s + "'");
    Integer den(s.substr(int_end + 1), 10);
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    value = Rational(Integer(s.substr(pos, int_end - pos), 10), den);
    value.canonicalize();
  } else if (s[int_end] == '.') {
    std::size_t frac_end = digits(int_end + 1);
    if (frac_end != s.size() || frac_end == int_end + 1)
      throw ParseError("malformed rational literal '" + s + "'");
    std::string frac = s.substr(int_end + 1);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = Rational(Integer(s.substr(pos, int_end - pos) + frac, 10), den);
    value.canonicalize();
  } else {
    throw ParseError("malformed rational literal '" + s + "'");
  }
  return negative ? Rational(-value) : value;
}

}  // namespace pgst::exact
