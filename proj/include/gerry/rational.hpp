#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "gerry/error.hpp"

namespace gerry {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  return Rational(num, den);
}

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// "P/Q", or "P" when integral.
inline std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

namespace detail {
inline BigInt parse_int(std::string_view s) {
  if (s.empty()) fail(ErrorCode::ParseError, "empty integer");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) fail(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') fail(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}
}  // namespace detail

/// Accepts "P/Q", "P" and exact decimals like "0.25" or "1.1".
inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    BigInt p = detail::parse_int(s.substr(0, slash));
    BigInt q = detail::parse_int(s.substr(slash + 1));
    if (q == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(s) + "'");
    return make_rational(p, q);
  }
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return Rational(detail::parse_int(s));
  std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
  bool neg = !ip.empty() && ip[0] == '-';
  if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
  if (ip.empty() && fp.empty()) fail(ErrorCode::ParseError, "bad number '" + std::string(s) + "'");
  BigInt whole = ip.empty() ? BigInt(0) : detail::parse_int(ip);
  BigInt frac = fp.empty() ? BigInt(0) : detail::parse_int(fp);
  if (frac < 0 || (!fp.empty() && (fp[0] == '-' || fp[0] == '+')))
    fail(ErrorCode::ParseError, "bad number '" + std::string(s) + "'");
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
  Rational r = make_rational(whole * scale + frac, scale);
  return neg ? Rational(-r) : r;
}

inline BigInt floor(const Rational& r) {
  BigInt q = num(r) / den(r);  // truncates toward zero
  if (num(r) < 0 && q * den(r) != num(r)) --q;
  return q;
}

inline BigInt ceil(const Rational& r) {
  BigInt q = num(r) / den(r);
  if (num(r) > 0 && q * den(r) != num(r)) ++q;
  return q;
}

inline bool is_integer(const Rational& r) { return den(r) == 1; }

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::Overflow, "value " + v.str() + " does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational pow(const Rational& base, unsigned e) {
  return make_rational(boost::multiprecision::pow(num(base), e),
                       boost::multiprecision::pow(den(base), e));
}

/// floor(x^(1/k)) for x >= 0.
inline BigInt iroot_floor(const BigInt& x, unsigned k) {
  if (x < 0) fail(ErrorCode::InvalidArgument, "root of negative value");
  if (k == 0) fail(ErrorCode::InvalidArgument, "zeroth root");
  if (x < 2 || k == 1) return x;
  BigInt lo = 0, hi = 1;
  while (boost::multiprecision::pow(hi, k) <= x) hi <<= 1;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) >> 1;
    if (boost::multiprecision::pow(mid, k) <= x) lo = mid;
    else hi = mid;
  }
  return lo;
}

/// floor(base^(p/q)) for integer base >= 1 and exponent p/q >= 0.
inline BigInt floor_pow(const BigInt& base, const Rational& exponent) {
  if (exponent < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
  auto p = static_cast<unsigned>(num(exponent));
  auto q = static_cast<unsigned>(den(exponent));
  return iroot_floor(boost::multiprecision::pow(base, p), q);
}

/// ceil(x^(1/k)) for x >= 0.
inline BigInt iroot_ceil(const BigInt& x, unsigned k) {
  BigInt r = iroot_floor(x, k);
  if (boost::multiprecision::pow(r, k) == x) return r;
  return r + 1;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  return a / boost::multiprecision::gcd(a, b) * b;
}

}  // namespace gerry
