/// @file rational.hpp
/// Exact scalar kernel: arbitrary-precision integers and rationals.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ka {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Error while parsing or validating user-supplied input. Carries a
/// zero-based column offset when the source is a one-line expression.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what, long col = -1)
      : std::runtime_error(col >= 0 ? what + " (column " + std::to_string(col + 1) + ")" : what),
        column_(col) {}
  long column() const { return column_; }

 private:
  long column_;
};

/// Exact evaluation failed (e.g. a denominator vanished at the point).
class eval_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A derived object does not satisfy the invariants it was assumed to
/// (inconsistent metric/form data, failed eigen-split, bracket not closing).
class structure_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal consistency check failed; indicates a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

/// Exact integer square root test.
inline std::optional<Int> exact_isqrt(const Int& n) {
  if (n < 0) return std::nullopt;
  Int r = boost::multiprecision::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

/// Rational square root, exact or nothing.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  auto n = exact_isqrt(num(q));
  auto d = exact_isqrt(den(q));
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

/// int64 conversion; nullopt when out of range or non-integral.
inline std::optional<std::int64_t> to_int64(const Rational& r) {
  if (den(r) != 1) return std::nullopt;
  Int n = num(r);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  return n.convert_to<std::int64_t>();
}

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

/// Parses an unsigned integer literal starting at i.
inline Int parse_uint(const std::string& s, size_t& i) {
  size_t start = i;
  while (i < s.size() && is_digit(s[i])) ++i;
  if (i == start) throw input_error("expected digit", static_cast<long>(start));
  return Int(s.substr(start, i - start));
}

}  // namespace detail

/// Parses "p", "-p" or "p/q" starting at position i (advanced past the value).
inline Rational parse_rational_at(const std::string& s, size_t& i) {
  detail::skip_ws(s, i);
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  detail::skip_ws(s, i);
  Int n = detail::parse_uint(s, i);
  Int d = 1;
  if (i < s.size() && s[i] == '/') {
    ++i;
    d = detail::parse_uint(s, i);
    if (d == 0) throw input_error("zero denominator", static_cast<long>(i - 1));
  }
  Rational r(n, d);
  return neg ? Rational(-r) : r;
}

/// Parses a full string as one rational.
inline Rational parse_rational(const std::string& s) {
  size_t i = 0;
  Rational r = parse_rational_at(s, i);
  detail::skip_ws(s, i);
  if (i != s.size()) throw input_error("trailing characters after rational", static_cast<long>(i));
  return r;
}

}  // namespace ka
