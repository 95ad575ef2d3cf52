#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace mukai {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

/// Exact floor of a rational (cpp_rational keeps denominators positive).
inline Int floor_rat(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  Int t = n / d;
  if (n < 0 && t * d != n) --t;
  return t;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

/// Integer square root (floor); n must be nonnegative.
inline Int isqrt(const Int& n) {
  require(n >= 0, ErrKind::validation, "isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

/// Exact rational square root; fails with `kind` unless both num and den are perfect squares.
inline Rat sqrt_rat(const Rat& q, ErrKind kind = ErrKind::not_square) {
  require(q >= 0, kind, "square root of negative rational");
  Int n = numerator(q), d = denominator(q);
  Int sn = isqrt(n), sd = isqrt(d);
  require(sn * sn == n && sd * sd == d, kind, "rational is not a perfect square");
  return Rat(sn, sd);
}

/// Canonical text form: lowest terms, positive denominator, "p/q" or bare "p".
inline std::string rat_str(const Rat& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

/// Parses "p", "-p" or "p/q" (whitespace-free). Throws ErrKind::parse on anything else.
inline Rat parse_rat(const std::string& text) {
  require(!text.empty(), ErrKind::parse, "empty rational literal");
  auto slash = text.find('/');
  auto parse_int = [&](const std::string& part) -> Int {
    require(!part.empty(), ErrKind::parse, "empty integer in '" + text + "'");
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    require(i < part.size(), ErrKind::parse, "bare sign in '" + text + "'");
    for (; i < part.size(); ++i)
      require(part[i] >= '0' && part[i] <= '9', ErrKind::parse,
              "invalid rational literal '" + text + "'");
    return Int(part[0] == '+' ? part.substr(1) : part);
  };
  if (slash == std::string::npos) return Rat(parse_int(text));
  Int n = parse_int(text.substr(0, slash));
  Int d = parse_int(text.substr(slash + 1));
  require(d != 0, ErrKind::parse, "zero denominator in '" + text + "'");
  return Rat(n, d);
}

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

/// Converts an exactly integral rational to Int, failing with `kind` otherwise.
inline Int to_int(const Rat& q, ErrKind kind = ErrKind::validation,
                  const std::string& what = "value") {
  require(is_integer(q), kind, what + " is not an integer: " + rat_str(q));
  return numerator(q);
}

}  // namespace mukai
