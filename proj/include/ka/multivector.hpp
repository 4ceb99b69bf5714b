/// @file multivector.hpp
/// Exterior-algebra elements of a seven-dimensional space, stored as sparse
/// rational coefficients over 7-bit blade masks (bit i set means the
/// covector e^{i+1} appears). Contains the metric-independent operations:
/// wedge, interior product, the involutions, grading and the text grammar.

#pragma once

#include "ka/linalg.hpp"
#include "ka/rational.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace ka {

using BladeMask = std::uint8_t;
inline constexpr int kDim = 7;
inline constexpr int kBlades = 1 << kDim;  // 128
inline constexpr BladeMask kVolumeMask = kBlades - 1;

inline int blade_degree(BladeMask m) { return std::popcount(static_cast<unsigned>(m)); }

/// Sign of e_A wedge e_B as a reordering of e_{A|B}; 0 when masks overlap.
inline int wedge_sign(BladeMask a, BladeMask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int i = 0; i < kDim; ++i) {
    if (!(b & (1 << i))) continue;
    // covectors of a with index above i must hop over e^{i+1}
    inversions += std::popcount(static_cast<unsigned>(a) >> (i + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

/// Sign of extracting basis vector i from blade m by the interior product;
/// 0 when i is absent.
inline int interior_sign(BladeMask m, int i) {
  if (!(m & (1 << i))) return 0;
  int below = std::popcount(static_cast<unsigned>(m) & ((1u << i) - 1));
  return (below & 1) ? -1 : 1;
}

/// Sign of the interior-product chain removing every index of subset s from
/// blade m, applied largest index first. Returns 0 if s is not a subset.
inline int subset_removal_sign(BladeMask m, BladeMask s) {
  if ((m & s) != s) return 0;
  int sign = 1;
  BladeMask cur = m;
  for (int i = kDim - 1; i >= 0; --i) {
    if (!(s & (1 << i))) continue;
    sign *= interior_sign(cur, i);
    cur = static_cast<BladeMask>(cur & ~(1 << i));
  }
  return sign;
}

inline std::string blade_name(BladeMask m) {
  if (m == 0) return "1";
  std::string s = "e";
  for (int i = 0; i < kDim; ++i)
    if (m & (1 << i)) s += static_cast<char>('1' + i);
  return s;
}

class Multivector {
 public:
  using Term = std::pair<BladeMask, Rational>;

  Multivector() = default;
  /*implicit*/ Multivector(const Rational& c) {
    if (c != 0) terms_.emplace_back(0, c);
  }
  /*implicit*/ Multivector(int c) : Multivector(Rational(c)) {}

  static Multivector blade(BladeMask m, const Rational& c = Rational(1)) {
    Multivector r;
    if (c != 0) r.terms_.emplace_back(m, c);
    return r;
  }
  /// Basis covector e^{i} for 1-based index i.
  static Multivector covector(int i, const Rational& c = Rational(1)) {
    return blade(static_cast<BladeMask>(1 << (i - 1)), c);
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  Rational coeff(BladeMask m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, BladeMask k) { return t.first < k; });
    return (it != terms_.end() && it->first == m) ? it->second : Rational(0);
  }

  bool operator==(const Multivector& o) const { return terms_ == o.terms_; }
  bool operator!=(const Multivector& o) const { return !(*this == o); }

  Multivector& operator+=(const Multivector& o) {
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
      if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
        out.push_back(*i++);
      } else if (i == terms_.end() || j->first < i->first) {
        out.push_back(*j++);
      } else {
        Rational c = i->second + j->second;
        if (c != 0) out.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) { return *this += -o; }
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  Multivector operator-() const {
    Multivector r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend Multivector operator*(const Rational& s, const Multivector& a) {
    if (s == 0) return {};
    Multivector r = a;
    for (auto& [m, c] : r.terms_) c *= s;
    return r;
  }

  /// Projection onto degree k.
  Multivector grade(int k) const {
    Multivector r;
    for (const auto& [m, c] : terms_)
      if (blade_degree(m) == k) r.terms_.emplace_back(m, c);
    return r;
  }

  Rational scalar_part() const { return coeff(0); }

  int max_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, blade_degree(m));
    return d;
  }

  bool is_homogeneous(int k) const {
    for (const auto& [m, c] : terms_)
      if (blade_degree(m) != k) return false;
    return true;
  }

  /// True when every term has degree <= 3 (the truncated subspace).
  bool is_truncated() const { return max_degree() <= 3; }

  /// Dense coefficient vector, indexed by blade mask.
  std::array<Rational, kBlades> dense() const {
    std::array<Rational, kBlades> d{};
    for (const auto& [m, c] : terms_) d[m] = c;
    return d;
  }

  static Multivector from_dense(const std::array<Rational, kBlades>& d) {
    Multivector r;
    for (int m = 0; m < kBlades; ++m)
      if (d[m] != 0) r.terms_.emplace_back(static_cast<BladeMask>(m), d[m]);
    return r;
  }

  /// Flat 128-vector in blade-mask order (for exact linear algebra).
  std::vector<Rational> to_vector() const {
    std::vector<Rational> v(kBlades, Rational(0));
    for (const auto& [m, c] : terms_) v[m] = c;
    return v;
  }

  static Multivector from_vector(const std::vector<Rational>& v) {
    Multivector r;
    for (int m = 0; m < kBlades; ++m)
      if (v[m] != 0) r.terms_.emplace_back(static_cast<BladeMask>(m), v[m]);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    // Print by degree, then lexicographically by index sequence.
    std::vector<Term> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) {
      int da = blade_degree(a.first), db = blade_degree(b.first);
      if (da != db) return da < db;
      return blade_name(a.first) < blade_name(b.first);
    });
    std::string out;
    for (const auto& [m, c] : sorted) {
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
      if (m == 0)
        out += to_string(a);
      else if (a == 1)
        out += blade_name(m);
      else
        out += to_string(a) + "*" + blade_name(m);
    }
    return out;
  }

 private:
  std::vector<Term> terms_;  // sorted by mask, no zero coefficients
};

/// Sparse accumulator for products; avoids repeated merge costs.
class DenseAccum {
 public:
  void add(BladeMask m, const Rational& c) {
    if (c == 0) return;
    if (!used_[m]) {
      used_[m] = true;
      touched_.push_back(m);
      a_[m] = c;
    } else {
      a_[m] += c;
    }
  }
  Multivector take() {
    std::sort(touched_.begin(), touched_.end());
    Multivector r;
    std::array<Rational, kBlades> d{};
    for (BladeMask m : touched_) d[m] = a_[m];
    r = Multivector::from_dense(d);
    for (BladeMask m : touched_) {
      a_[m] = 0;
      used_[m] = false;
    }
    touched_.clear();
    return r;
  }

 private:
  std::array<Rational, kBlades> a_{};
  std::array<bool, kBlades> used_{};
  std::vector<BladeMask> touched_;
};

inline Multivector wedge(const Multivector& a, const Multivector& b) {
  DenseAccum acc;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      acc.add(static_cast<BladeMask>(ma | mb), s > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
    }
  return acc.take();
}

using Vec7 = std::array<Rational, kDim>;

/// Interior product with the vector v = sum v_i e_{i+1} (anti-derivation of
/// degree -1; i-th basis vector pairs with the i-th basis covector).
inline Multivector interior(const Vec7& v, const Multivector& a) {
  DenseAccum acc;
  for (const auto& [m, c] : a.terms())
    for (int i = 0; i < kDim; ++i) {
      if (v[i] == 0) continue;
      int s = interior_sign(m, i);
      if (s == 0) continue;
      acc.add(static_cast<BladeMask>(m & ~(1 << i)), s > 0 ? Rational(v[i] * c) : Rational(-(v[i] * c)));
    }
  return acc.take();
}

inline Multivector interior_basis(int i /*0-based*/, const Multivector& a) {
  Vec7 v{};
  v[i] = 1;
  return interior(v, a);
}

/// Grade automorphism: (-1)^deg on each homogeneous component.
inline Multivector grade_involution(const Multivector& a) {
  Multivector r = a;
  std::array<Rational, kBlades> d = r.dense();
  for (int m = 0; m < kBlades; ++m)
    if (blade_degree(static_cast<BladeMask>(m)) & 1) d[m] = -d[m];
  return Multivector::from_dense(d);
}

/// Reversal anti-automorphism: (-1)^{deg(deg-1)/2} on each component.
inline Multivector reversal(const Multivector& a) {
  std::array<Rational, kBlades> d = a.dense();
  for (int m = 0; m < kBlades; ++m) {
    int k = blade_degree(static_cast<BladeMask>(m));
    if ((k * (k - 1) / 2) & 1) d[m] = -d[m];
  }
  return Multivector::from_dense(d);
}

/// pi compose tau; fixes exactly the degrees {0,3,4,7}.
inline Multivector main_antiautomorphism(const Multivector& a) {
  return grade_involution(reversal(a));
}

/// Truncation to degrees <= 3.
inline Multivector truncate_low(const Multivector& a) {
  Multivector r;
  for (int k = 0; k <= 3; ++k) r += a.grade(k);
  return r;
}

/// Degree-preserving derivation extension of a linear map on covectors.
/// The map sends e^{i+1} to sum_j cov_map(i, j) e^{j+1}; scalars go to zero
/// and products obey the Leibniz rule.
inline Multivector derivation_action(const Mat& cov_map, const Multivector& a) {
  DenseAccum acc;
  for (const auto& [m, c] : a.terms()) {
    for (int i = 0; i < kDim; ++i) {
      if (!(m & (1 << i))) continue;
      BladeMask rest = static_cast<BladeMask>(m & ~(1 << i));
      int extract = interior_sign(m, i);  // sign moving e^{i+1} to the front
      for (int j = 0; j < kDim; ++j) {
        const Rational& d = cov_map(i, j);
        if (d == 0) continue;
        int w = wedge_sign(static_cast<BladeMask>(1 << j), rest);
        if (w == 0) continue;
        acc.add(static_cast<BladeMask>(rest | (1 << j)),
                extract * w > 0 ? Rational(c * d) : Rational(-(c * d)));
      }
    }
  }
  return acc.take();
}

/// Parses the multivector grammar. Terms are `[sign] [rational [*]] eIJK`
/// with strictly increasing digit indices 1..7, or a bare rational scalar.
inline Multivector parse_multivector(const std::string& s) {
  Multivector result;
  size_t i = 0;
  detail::skip_ws(s, i);
  if (i == s.size()) throw input_error("empty multivector expression", 0);
  bool first = true;
  while (i < s.size()) {
    detail::skip_ws(s, i);
    int sign = 1;
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
      detail::skip_ws(s, i);
      if (i < s.size() && s[i] == '*') {
        ++i;
        detail::skip_ws(s, i);
        if (i == s.size() || s[i] != 'e')
          throw input_error("expected blade after '*'", static_cast<long>(i));
      }
    }
    BladeMask mask = 0;
    if (i < s.size() && s[i] == 'e') {
      size_t epos = i;
      ++i;
      int last = 0;
      bool any = false;
      while (i < s.size() && detail::is_digit(s[i])) {
        int d = s[i] - '0';
        if (d < 1 || d > 7)
          throw input_error("blade index out of range 1..7", static_cast<long>(i));
        if (d <= last)
          throw input_error("blade indices must be strictly increasing", static_cast<long>(i));
        mask = static_cast<BladeMask>(mask | (1 << (d - 1)));
        last = d;
        any = true;
        ++i;
      }
      if (!any) throw input_error("expected blade indices after 'e'", static_cast<long>(epos + 1));
    } else if (!have_coeff) {
      throw input_error("expected term", static_cast<long>(i));
    }
    result += Multivector::blade(mask, sign < 0 ? Rational(-coeff) : coeff);
    first = false;
    detail::skip_ws(s, i);
  }
  return result;
}

}  // namespace ka
