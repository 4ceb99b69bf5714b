/// @file square_classifier.hpp
/// Decides whether a truncated exterior form is the square of a spinor,
/// classifies squares into the non-isotropic and isotropic families, and
/// factorizes isotropic squares into triples of orthogonal isotropic
/// one-forms.

#pragma once

#include "ka/quadratic_space.hpp"

#include <optional>
#include <string>

namespace ka {

/// A supplied witness form beta had (alpha vee beta)^(0) = 0, so the
/// two-sided test cannot run with it. Distinct from "not a square".
class witness_rejected_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SquareKind { non_isotropic, isotropic, not_a_square };

inline const char* to_string(SquareKind k) {
  switch (k) {
    case SquareKind::non_isotropic: return "non_isotropic";
    case SquareKind::isotropic: return "isotropic";
    case SquareKind::not_a_square: return "not_a_square";
  }
  return "?";
}

struct SquareVerdict {
  bool is_square = false;
  SquareKind kind = SquareKind::not_a_square;
  Rational c;                                      // degree-0 part
  std::optional<Multivector> witness_beta;         // basis witness used
  std::optional<std::array<Multivector, 3>> triple;  // isotropic factorization
};

/// Non-degenerate characterization: <phi,phi> = -7c^2 and
/// 6 c phi = l * (phi tri_1 phi), both exactly.
inline bool check_nondegenerate(const QuadraticSpace& q, int l, const Rational& c,
                                const Multivector& phi) {
  if (l != 1 && l != -1) throw input_error("l must be +1 or -1");
  if (inner(q, phi, phi) != Rational(-7) * c * c) return false;
  Multivector lhs = Rational(6) * c * phi;
  Multivector rhs = Rational(l) * hodge(q, gen_product(q, phi, phi, 1));
  return lhs == rhs;
}

/// Extracts an orthogonal isotropic triple from a decomposable totally
/// isotropic three-form; nullopt when alpha is not of that shape.
/// The support W is spanned by the double contractions of alpha; the
/// returned basis of W is echelonized with lexicographic pivoting and the
/// first factor is rescaled so the wedge reproduces alpha exactly.
inline std::optional<std::array<Multivector, 3>> isotropic_factorize(const QuadraticSpace& q,
                                                                     const Multivector& alpha) {
  if (alpha.is_zero()) return std::nullopt;
  if (!alpha.is_homogeneous(3)) return std::nullopt;
  // W = span of iota_u iota_v alpha over basis vectors.
  std::vector<std::vector<Rational>> rows;
  for (int u = 0; u < kDim; ++u)
    for (int v = u + 1; v < kDim; ++v) {
      Multivector w = interior_basis(u, interior_basis(v, alpha));
      if (!w.is_zero()) {
        std::vector<Rational> r(kDim, Rational(0));
        for (const auto& [m, c] : w.terms())
          r[std::countr_zero(static_cast<unsigned>(m))] = c;
        rows.push_back(std::move(r));
      }
    }
  if (rows.empty()) return std::nullopt;
  Mat m(rows.size(), kDim);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < kDim; ++j) m(i, j) = rows[i][j];
  std::vector<size_t> pivots = rref(m);
  if (pivots.size() != 3) return std::nullopt;
  std::array<Multivector, 3> theta;
  for (int t = 0; t < 3; ++t) {
    Multivector f;
    for (int j = 0; j < kDim; ++j)
      if (m(t, j) != 0) f += Multivector::covector(j + 1, m(t, j));
    theta[t] = f;
  }
  // alpha must be a multiple of theta1 ^ theta2 ^ theta3.
  Multivector w123 = wedge(theta[0], wedge(theta[1], theta[2]));
  if (w123.is_zero()) return std::nullopt;
  const auto& lead = w123.terms().front();
  Rational t = alpha.coeff(lead.first) / lead.second;
  if (t == 0 || Rational(t) * w123 != alpha) return std::nullopt;
  // Total isotropy of W under the covector metric.
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Vec7 a{}, b{};
      for (const auto& [mm, c] : theta[i].terms())
        a[std::countr_zero(static_cast<unsigned>(mm))] = c;
      for (const auto& [mm, c] : theta[j].terms())
        b[std::countr_zero(static_cast<unsigned>(mm))] = c;
      if (q.pair_covectors(a, b) != 0) return std::nullopt;
    }
  theta[0] = t * theta[0];
  return theta;
}

/// The two-sided square test against one witness,
/// alpha vee beta vee alpha = 8 (alpha vee beta)^(0) alpha.
inline bool square_identity_holds(const QuadraticSpace& q, int l, const Multivector& alpha,
                                  const Multivector& beta) {
  Multivector ab = vee(q, l, alpha, beta);
  Multivector aba = vee(q, l, ab, alpha);
  return aba == Rational(8) * ab.scalar_part() * alpha;
}

/// Full squarehood decision. With a witness beta the three conditions of
/// the fixed-witness criterion are checked; without one, the two-sided
/// identity is swept over all 64 basis elements of the truncated algebra
/// (sufficient by bilinearity in beta).
inline SquareVerdict check_square_conditions(const QuadraticSpace& q, int l,
                                             const Multivector& alpha,
                                             const std::optional<Multivector>& beta = {}) {
  if (!alpha.is_truncated()) throw input_error("alpha must have degree <= 3");
  SquareVerdict v;
  v.c = alpha.scalar_part();
  bool pass = main_antiautomorphism(alpha) == alpha;
  if (pass) {
    if (beta) {
      if (!beta->is_truncated()) throw input_error("beta must have degree <= 3");
      Rational s = vee(q, l, alpha, *beta).scalar_part();
      if (s == 0) throw witness_rejected_error("(alpha vee beta)^(0) = 0: witness rejected");
      pass = alpha.is_zero() ||
             (vee(q, l, alpha, alpha) == Rational(8) * alpha.scalar_part() * alpha &&
              square_identity_holds(q, l, alpha, *beta));
      if (pass) v.witness_beta = *beta;
    } else {
      for (int m = 0; m < kBlades && pass; ++m) {
        if (blade_degree(static_cast<BladeMask>(m)) > 3) continue;
        Multivector bm = Multivector::blade(static_cast<BladeMask>(m));
        pass = square_identity_holds(q, l, alpha, bm);
        if (pass && !v.witness_beta && vee(q, l, alpha, bm).scalar_part() != 0)
          v.witness_beta = bm;
      }
      if (pass && !v.witness_beta && !alpha.is_zero())
        pass = false;  // no basis witness pairs nontrivially: not a square of anything nonzero
    }
  }
  if (!pass) {
    v.is_square = false;
    v.kind = SquareKind::not_a_square;
    return v;
  }
  v.is_square = true;
  if (v.c != 0) {
    v.kind = SquareKind::non_isotropic;
  } else {
    v.kind = SquareKind::isotropic;
    auto triple = isotropic_factorize(q, alpha);
    if (triple) v.triple = *triple;
  }
  return v;
}

}  // namespace ka
