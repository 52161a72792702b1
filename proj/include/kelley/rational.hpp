#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kelley/error.hpp"

namespace kelley {

/// Exact rational scalar. gmpxx keeps values canonical (gcd 1, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

namespace detail {

inline bool parse_integer(std::string_view text, Integer& out) {
  if (text.empty()) return false;
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  std::string digits(text.front() == '+' ? text.substr(1) : text);
  return out.set_str(digits, 10) == 0;
}

}  // namespace detail

/// Parses "p/q" or "p". Non-reduced input such as "2/4" is accepted and
/// normalized; a zero denominator or anything non-numeric is rejected.
inline Rational parse_rational(std::string_view text) {
  Integer num, den = 1;
  auto slash = text.find('/');
  bool ok = false;
  if (slash == std::string_view::npos) {
    ok = detail::parse_integer(text, num);
  } else {
    std::string_view den_text = text.substr(slash + 1);
    ok = detail::parse_integer(text.substr(0, slash), num) &&
         !den_text.empty() && den_text.front() != '-' && den_text.front() != '+' &&
         detail::parse_integer(den_text, den);
  }
  if (!ok) throw Error(ErrorKind::SchemaError, "bad rational \"" + std::string(text) + "\"");
  if (den == 0) throw Error(ErrorKind::SchemaError, "bad rational \"" + std::string(text) + "\" (zero denominator)");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Canonical "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer acc = 1;
  for (const Rational& v : values) {
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.get_den_mpz_t());
  }
  return acc;
}

inline Rational sum(std::span<const Rational> values) {
  Rational acc = 0;
  for (const Rational& v : values) acc += v;
  return acc;
}

inline Rational max_of(std::span<const Rational> values) {
  return *std::max_element(values.begin(), values.end());
}

inline Rational min_of(std::span<const Rational> values) {
  return *std::min_element(values.begin(), values.end());
}

}  // namespace kelley
