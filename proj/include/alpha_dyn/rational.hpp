#pragma once

// Exact rational arithmetic for the rational backend (GMP).

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace alpha_dyn {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational from_u64(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return Rational(z);
}

/// Parses "p/q", an integer "p", or a finite decimal such as "0.25" (read
/// exactly, i.e. "0.3" is 3/10). Returns nullopt on malformed input or a zero
/// denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_integer = [](std::string_view s) -> std::optional<Integer> {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) return std::nullopt;
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') return std::nullopt;
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits);
  };
  auto parse_decimal = [&](std::string_view s) -> std::optional<Rational> {
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
      auto z = parse_integer(s);
      if (!z) return std::nullopt;
      return Rational(*z);
    }
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    for (char c : whole)
      if (c < '0' || c > '9') return std::nullopt;
    for (char c : frac)
      if (c < '0' || c > '9') return std::nullopt;
    Integer num(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational r(negative ? Integer(-num) : num, den);
    r.canonicalize();
    return r;
  };

  text = trim(text);
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  auto num = parse_integer(trim(text.substr(0, slash)));
  auto den = parse_integer(trim(text.substr(slash + 1)));
  if (!num || !den || *den == 0) return std::nullopt;
  Rational r(*num, *den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational pow(const Rational& base, unsigned long exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
  return Rational(num, den);  // already canonical
}

/// 2^{-e} as an exact rational.
inline Rational dyadic(unsigned long e) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, e);
  return Rational(Integer(1), den);
}

/// Larger of the decimal digit counts of numerator and denominator.
inline std::size_t decimal_digits(const Rational& r) {
  std::size_t a = mpz_sizeinbase(r.get_num().get_mpz_t(), 10);
  std::size_t b = mpz_sizeinbase(r.get_den().get_mpz_t(), 10);
  return a > b ? a : b;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace alpha_dyn
