#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "chenciner/errors.hpp"

namespace chenciner {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error("rational_from_double: non-finite input");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // m * 2^53 is an integer because a double mantissa has 53 bits.
  auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  exp -= 53;
  Rational r(mant);
  if (exp >= 0) {
    r *= Rational(BigInt(1) << exp);
  } else {
    r /= Rational(BigInt(1) << -exp);
  }
  return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace detail {

inline BigInt parse_integer(std::string_view s, std::string_view original) {
  if (s.empty()) throw Error("invalid numeric literal: '" + std::string(original) + "'");
  for (char c : s) {
    if (c < '0' || c > '9')
      throw Error("invalid numeric literal: '" + std::string(original) + "'");
  }
  // cpp_int's string constructor reads a leading zero as an octal prefix.
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return BigInt(std::string(s));
}

inline BigInt pow10(unsigned n) {
  BigInt p = 1;
  for (unsigned i = 0; i < n; ++i) p *= 10;
  return p;
}

}  // namespace detail

// Parses a decimal literal ("-0.125", "2", "1e-3") or an exact fraction
// ("p/q") into a rational with no rounding.
inline Rational rational_from_string(std::string_view s) {
  const std::string_view original = s;
  if (s.empty()) throw Error("invalid numeric literal: ''");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    int sign = 1;
    if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
      if (num.front() == '-') sign = -1;
      num.remove_prefix(1);
    }
    BigInt n = detail::parse_integer(num, original);
    BigInt d = detail::parse_integer(den, original);
    if (d == 0) throw Error("invalid numeric literal (zero denominator): '" +
                            std::string(original) + "'");
    Rational r(n, d);
    return sign < 0 ? -r : r;
  }

  int sign = 1;
  if (s.front() == '+' || s.front() == '-') {
    if (s.front() == '-') sign = -1;
    s.remove_prefix(1);
  }

  long expo = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    s = s.substr(0, e);
    int esign = 1;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      if (es.front() == '-') esign = -1;
      es.remove_prefix(1);
    }
    BigInt ev = detail::parse_integer(es, original);
    if (ev > 4096) throw Error("exponent out of range: '" + std::string(original) + "'");
    expo = esign * ev.convert_to<long>();
  }

  std::string digits;
  long frac_len = 0;
  bool seen_dot = false, seen_digit = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_dot) throw Error("invalid numeric literal: '" + std::string(original) + "'");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else {
      throw Error("invalid numeric literal: '" + std::string(original) + "'");
    }
  }
  if (!seen_digit) throw Error("invalid numeric literal: '" + std::string(original) + "'");

  Rational r(detail::parse_integer(digits.empty() ? std::string_view("0") : std::string_view(digits),
                                   original));
  long net = expo - frac_len;
  if (net > 0) {
    r *= Rational(detail::pow10(static_cast<unsigned>(net)));
  } else if (net < 0) {
    r /= Rational(detail::pow10(static_cast<unsigned>(-net)));
  }
  return sign < 0 ? -r : r;
}

// Exact textual form: a finite decimal when the reduced denominator is
// 2^a * 5^b, otherwise the fraction "p/q". Both re-parse to the same value.
inline std::string to_exact_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  unsigned twos = 0, fives = 0;
  BigInt d = den;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return num.str() + "/" + den.str();

  unsigned shift = std::max(twos, fives);
  BigInt scaled = num;
  for (unsigned i = 0; i < shift - twos; ++i) scaled *= 2;
  for (unsigned i = 0; i < shift - fives; ++i) scaled *= 5;

  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string body = scaled.str();
  if (shift > 0) {
    if (body.size() <= shift) body.insert(0, shift + 1 - body.size(), '0');
    body.insert(body.size() - shift, ".");
  }
  return (neg ? "-" : "") + body;
}

inline int sign_of(const Rational& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

}  // namespace chenciner
