/// @file poly.hpp
/// Multivariate polynomials in the seven fixed coordinates
/// (x1, y1, x2, y2, x3, y3, z) with rational coefficients, and rational
/// functions over them. Rational functions are deliberately not reduced to
/// lowest terms; equality is decided by cross-multiplication.

#pragma once

#include "ka/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ka {

inline constexpr int kNumVars = 7;
inline constexpr std::array<const char*, kNumVars> kVarNames = {"x1", "y1", "x2",
                                                                "y2", "x3", "y3", "z"};

/// Index of a coordinate name, or input_error.
inline int var_index(const std::string& name) {
  for (int i = 0; i < kNumVars; ++i)
    if (name == kVarNames[i]) return i;
  throw input_error("unknown variable '" + name + "'");
}

using Exp7 = std::array<std::uint8_t, kNumVars>;

inline int total_degree(const Exp7& e) {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

/// Graded-lexicographic term order (the canonical order for printing).
struct GrlexLess {
  bool operator()(const Exp7& a, const Exp7& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;  // lexicographic within a degree block
  }
};

class Poly7 {
 public:
  using Terms = std::map<Exp7, Rational, GrlexLess>;

  Poly7() = default;
  /*implicit*/ Poly7(const Rational& c) {
    if (c != 0) terms_[Exp7{}] = c;
  }
  /*implicit*/ Poly7(int c) : Poly7(Rational(c)) {}

  static Poly7 variable(int v, int power = 1) {
    Poly7 p;
    Exp7 e{};
    e[v] = static_cast<std::uint8_t>(power);
    p.terms_[e] = 1;
    return p;
  }

  static Poly7 monomial(const Exp7& e, const Rational& c) {
    Poly7 p;
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exp7{});
  }
  Rational constant_value() const {
    auto it = terms_.find(Exp7{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

  bool operator==(const Poly7& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly7& o) const { return !(*this == o); }

  Poly7& operator+=(const Poly7& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly7& operator-=(const Poly7& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly7 operator+(Poly7 a, const Poly7& b) { return a += b; }
  friend Poly7 operator-(Poly7 a, const Poly7& b) { return a -= b; }
  Poly7 operator-() const {
    Poly7 r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend Poly7 operator*(const Poly7& a, const Poly7& b) {
    Poly7 r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exp7 e;
        for (int i = 0; i < kNumVars; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Poly7& operator*=(const Poly7& o) { return *this = *this * o; }
  friend Poly7 operator*(const Rational& s, const Poly7& p) { return Poly7(s) * p; }

  /// Formal partial derivative with respect to coordinate v.
  Poly7 diff(int v) const {
    Poly7 r;
    for (const auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      Exp7 d = e;
      --d[v];
      r.add_term(d, c * Rational(int(e[v])));
    }
    return r;
  }

  Rational eval(const std::array<Rational, kNumVars>& pt) const {
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < kNumVars; ++i)
        for (int k = 0; k < e[i]; ++k) t *= pt[i];
      acc += t;
    }
    return acc;
  }

  double eval_double(const std::array<double, kNumVars>& pt) const {
    double acc = 0;
    for (const auto& [e, c] : terms_) {
      double t = static_cast<double>(num(c)) / static_cast<double>(den(c));
      for (int i = 0; i < kNumVars; ++i)
        for (int k = 0; k < e[i]; ++k) t *= pt[i];
      acc += t;
    }
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Highest terms first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational a = c;
      if (out.empty()) {
        if (a < 0) {
          out += "-";
          a = -a;
        }
      } else {
        out += a < 0 ? " - " : " + ";
        if (a < 0) a = -a;
      }
      std::string vars;
      for (int i = 0; i < kNumVars; ++i) {
        if (e[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += kVarNames[i];
        if (e[i] > 1) vars += "^" + std::to_string(int(e[i]));
      }
      if (vars.empty())
        out += to_string(a);
      else if (a == 1)
        out += vars;
      else
        out += to_string(a) + "*" + vars;
    }
    return out;
  }

 private:
  void add_term(const Exp7& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

/// Parses the polynomial grammar: '+'/'-' separated terms of the form
/// `c`, `x1`, `c*x1^2*y3`, with rational coefficients `p/q`.
inline Poly7 parse_poly(const std::string& s) {
  Poly7 result;
  size_t i = 0;
  detail::skip_ws(s, i);
  if (i == s.size()) throw input_error("empty polynomial", 0);
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    detail::skip_ws(s, i);
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw input_error("expected '+' or '-' between terms", static_cast<long>(i));
    }
    detail::skip_ws(s, i);
    if (i == s.size()) throw input_error("dangling sign", static_cast<long>(i));
    Rational coeff(1);
    bool have_coeff = false;
    if (detail::is_digit(s[i])) {
      coeff = parse_rational_at(s, i);
      have_coeff = true;
    }
    Exp7 e{};
    bool have_vars = false;
    for (;;) {
      detail::skip_ws(s, i);
      size_t save = i;
      if (i < s.size() && s[i] == '*') {
        ++i;
        detail::skip_ws(s, i);
      } else if (have_vars || have_coeff) {
        // Variables may follow the coefficient without '*', e.g. "2x1".
        if (i >= s.size() || !(s[i] == 'x' || s[i] == 'y' || s[i] == 'z')) break;
      } else if (i >= s.size() || !(s[i] == 'x' || s[i] == 'y' || s[i] == 'z')) {
        break;
      }
      if (i >= s.size() || !(s[i] == 'x' || s[i] == 'y' || s[i] == 'z')) {
        if (save == i) break;
        throw input_error("expected variable after '*'", static_cast<long>(i));
      }
      std::string name(1, s[i]);
      ++i;
      if (name != "z") {
        if (i >= s.size() || !detail::is_digit(s[i]))
          throw input_error("expected coordinate index", static_cast<long>(i));
        name += s[i];
        ++i;
      }
      int v = -1;
      try {
        v = var_index(name);
      } catch (const input_error&) {
        throw input_error("unknown variable '" + name + "'", static_cast<long>(i - name.size()));
      }
      int pow = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        Int p = detail::parse_uint(s, i);
        if (p < 0 || p > 200) throw input_error("exponent out of range", static_cast<long>(i));
        pow = p.convert_to<int>();
      }
      e[v] = static_cast<std::uint8_t>(e[v] + pow);
      have_vars = true;
    }
    if (!have_coeff && !have_vars)
      throw input_error("expected term", static_cast<long>(i));
    result += Poly7::monomial(e, sign < 0 ? Rational(-coeff) : coeff);
    first = false;
    detail::skip_ws(s, i);
  }
  return result;
}

/// Rational function numerator/denominator pair. Not reduced; equality is
/// by cross-multiplication.
class RatFun7 {
 public:
  RatFun7() : num_(Rational(0)), den_(Rational(1)) {}
  /*implicit*/ RatFun7(Poly7 n) : num_(std::move(n)), den_(Rational(1)) {}
  /*implicit*/ RatFun7(const Rational& c) : num_(c), den_(Rational(1)) {}
  /*implicit*/ RatFun7(int c) : num_(Rational(c)), den_(Rational(1)) {}
  RatFun7(Poly7 n, Poly7 d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw input_error("rational function with zero denominator");
  }

  const Poly7& num() const { return num_; }
  const Poly7& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFun7 operator+(const RatFun7& a, const RatFun7& b) {
    if (a.den_ == b.den_) return RatFun7(a.num_ + b.num_, a.den_);
    return RatFun7(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun7 operator-(const RatFun7& a, const RatFun7& b) {
    if (a.den_ == b.den_) return RatFun7(a.num_ - b.num_, a.den_);
    return RatFun7(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFun7 operator-() const { return RatFun7(-num_, den_); }
  friend RatFun7 operator*(const RatFun7& a, const RatFun7& b) {
    return RatFun7(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun7 operator/(const RatFun7& a, const RatFun7& b) {
    if (b.num_.is_zero()) throw eval_error("division by the zero rational function");
    return RatFun7(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFun7& operator+=(const RatFun7& o) { return *this = *this + o; }
  RatFun7& operator-=(const RatFun7& o) { return *this = *this - o; }
  RatFun7& operator*=(const RatFun7& o) { return *this = *this * o; }

  /// Quotient-rule derivative.
  RatFun7 diff(int v) const {
    if (den_.is_constant()) {
      return RatFun7(num_.diff(v), den_);
    }
    return RatFun7(num_.diff(v) * den_ - num_ * den_.diff(v), den_ * den_);
  }

  Rational eval(const std::array<Rational, kNumVars>& pt) const {
    Rational d = den_.eval(pt);
    if (d == 0) throw eval_error("denominator vanishes at evaluation point");
    return num_.eval(pt) / d;
  }

  std::string str() const {
    if (den_.is_constant()) {
      if (den_.constant_value() == 1) return num_.str();
      Rational c = Rational(1) / den_.constant_value();
      return (Poly7(c) * num_).str();
    }
    return "(" + num_.str() + ") / (" + den_.str() + ")";
  }

 private:
  Poly7 num_, den_;
};

/// Cross-multiplication equality: a.num*b.den == b.num*a.den.
inline bool ratfun_equal(const RatFun7& a, const RatFun7& b) {
  if (a.den().is_zero() || b.den().is_zero())
    throw input_error("rational function with zero denominator");
  return a.num() * b.den() == b.num() * a.den();
}

inline Poly7 poly_diff(const Poly7& p, const std::string& var) { return p.diff(var_index(var)); }

}  // namespace ka
