/// @file master_system.hpp
/// Pointwise verification of the parallel-spinor differential systems: the
/// master equation for the square form, its degree-split expansion, the
/// reduced system for non-isotropic structures with the 27-component
/// reported separately, and the isotropic expansion driven by a coherent
/// triple of one-forms. Derivatives are free input "rates"; nothing here
/// integrates a PDE.

#pragma once

#include "ka/g2_structures.hpp"
#include "ka/quadratic_space.hpp"

#include <array>
#include <optional>

namespace ka {

/// Right-hand side of the master equation:
///   a_v vee alpha + alpha vee (pi tau)(a_v).
inline Multivector master_rhs(const QuadraticSpace& q, int l, const Multivector& a_v,
                              const Multivector& alpha) {
  if (!a_v.is_truncated() || !alpha.is_truncated())
    throw input_error("master_rhs expects truncated inputs");
  return vee(q, l, a_v, alpha) + vee(q, l, alpha, main_antiautomorphism(a_v));
}

struct ExpandedRates {
  Rational scalar_rate;    // d/dt of the degree-0 part
  Multivector three_rate;  // d/dt of the degree-3 part
};

/// The degree-split right-hand sides:
///   scalar: 2 f a^(0) - 2 <a^(3), phi>
///   three:  2 f a^(3) + 2 a^(0) phi + 2l*(a^(1)^phi) - 2 a^(2) tri_1 phi
///           + 2l*(a^(3) tri_1 phi)
inline ExpandedRates expanded_rhs(const QuadraticSpace& q, int l, const Multivector& a_v,
                                  const Rational& f, const Multivector& phi) {
  if (!a_v.is_truncated()) throw input_error("expanded_rhs expects truncated a_v");
  if (!phi.is_homogeneous(3)) throw input_error("phi must be a three-form");
  Multivector a0 = a_v.grade(0), a1 = a_v.grade(1), a2 = a_v.grade(2), a3 = a_v.grade(3);
  ExpandedRates r;
  r.scalar_rate = Rational(2) * f * a0.scalar_part() - Rational(2) * inner(q, a3, phi);
  r.three_rate = Rational(2) * f * a3 + Rational(2) * a0.scalar_part() * phi +
                 Rational(2 * l) * hodge(q, wedge(a1, phi)) -
                 Rational(2) * gen_product(q, a2, phi, 1) +
                 Rational(2 * l) * hodge(q, gen_product(q, a3, phi, 1));
  return r;
}

/// Irreducible components of a connection coefficient relative to a
/// structure: a^(2) = iota_{sigma1 sharp} phi + sigma14 and
/// a^(3) = kappa0 phi + *(kappa1 ^ phi) + kappa27.
struct ADecomposition {
  Rational a0;
  Multivector a1;
  Multivector sigma1;   // degree 1
  Multivector sigma14;  // degree 2, 14-component
  Rational kappa0;
  Multivector kappa1;   // degree 1
  Multivector kappa27;  // degree 3, 27-component
};

inline ADecomposition decompose_a(const G2StarStructure& s, const Multivector& a_v) {
  if (!a_v.is_truncated()) throw input_error("decompose_a expects a truncated form");
  const QuadraticSpace& q = s.space();
  ADecomposition d;
  d.a0 = a_v.scalar_part();
  d.a1 = a_v.grade(1);
  auto [p7, p14] = s.split_two_form(a_v.grade(2));
  d.sigma14 = p14;
  // p7 = iota_{sigma sharp} phi: solve for the vector, then lower the index.
  {
    Mat sys(21, 7);
    std::vector<BladeMask> masks;
    for (int m = 0; m < kBlades; ++m)
      if (blade_degree(static_cast<BladeMask>(m)) == 2) masks.push_back(static_cast<BladeMask>(m));
    for (int i = 0; i < 7; ++i) {
      auto dd = interior_basis(i, s.phi()).dense();
      for (size_t r = 0; r < masks.size(); ++r) sys(r, i) = dd[masks[r]];
    }
    std::vector<Rational> rhs(masks.size());
    auto dd = p7.dense();
    for (size_t r = 0; r < masks.size(); ++r) rhs[r] = dd[masks[r]];
    auto x = solve(std::move(sys), std::move(rhs));
    if (!x) throw structure_error("two-form 7-component is not of the form iota_v phi");
    Vec7 sharp_vec{};
    for (int i = 0; i < 7; ++i) sharp_vec[i] = (*x)[i];
    d.sigma1 = flat(q, sharp_vec);
  }
  auto ts = s.split_three_form(a_v.grade(3));
  d.kappa27 = ts.part27;
  d.kappa0 = inner(q, ts.part1, s.phi()) / inner(q, s.phi(), s.phi());
  // part7 = *(kappa1 ^ phi): solve kappa1 against the basis *(e^i ^ phi).
  {
    Mat sys(35, 7);
    std::vector<BladeMask> masks;
    for (int m = 0; m < kBlades; ++m)
      if (blade_degree(static_cast<BladeMask>(m)) == 3) masks.push_back(static_cast<BladeMask>(m));
    for (int i = 0; i < 7; ++i) {
      auto dd = hodge(q, wedge(Multivector::covector(i + 1), s.phi())).dense();
      for (size_t r = 0; r < masks.size(); ++r) sys(r, i) = dd[masks[r]];
    }
    std::vector<Rational> rhs(masks.size());
    auto dd = ts.part7.dense();
    for (size_t r = 0; r < masks.size(); ++r) rhs[r] = dd[masks[r]];
    auto x = solve(std::move(sys), std::move(rhs));
    if (!x) throw structure_error("three-form 7-component is not of the form *(theta ^ phi)");
    Multivector k1;
    for (int i = 0; i < 7; ++i)
      if ((*x)[i] != 0) k1 += Multivector::covector(i + 1, (*x)[i]);
    d.kappa1 = k1;
  }
  return d;
}

/// Reconstructs the truncated form from its decomposition (identity check).
inline Multivector recompose_a(const G2StarStructure& s, const ADecomposition& d) {
  const QuadraticSpace& q = s.space();
  Multivector two = d.sigma14;
  if (!d.sigma1.is_zero()) {
    Vec7 sharp_vec = sharp(q, d.sigma1);
    Multivector i_phi;
    for (int i = 0; i < 7; ++i)
      if (sharp_vec[i] != 0) i_phi += sharp_vec[i] * interior_basis(i, s.phi());
    two += i_phi;
  }
  Multivector three = d.kappa0 * s.phi() + hodge(q, wedge(d.kappa1, s.phi())) + d.kappa27;
  return Multivector(d.a0) + d.a1 + two + three;
}

struct ReducedRates {
  Rational abar0;          // a^(0) + 7 f kappa0
  Multivector abar1;       // a^(1) + 3 f sigma1 + 4 l f kappa1
  Multivector obstruction; // kappa27 = P_27(a^(3)), reported exactly
  Rational scalar_rate;    // 2 f abar0
  Multivector three_rate;  // 2 abar0 phi + 2l*(abar1 ^ phi)
};

/// The reduced system of a non-isotropic structure. Requires f = c, the
/// structure's signed scale (so <phi,phi> = -7 f^2).
inline ReducedRates reduced_rhs(const G2StarStructure& s, const Multivector& a_v,
                                const Rational& f) {
  if (f != s.c()) throw input_error("f must equal the structure's scale c");
  const QuadraticSpace& q = s.space();
  ADecomposition d = decompose_a(s, a_v);
  ReducedRates r;
  r.abar0 = d.a0 + Rational(7) * f * d.kappa0;
  r.abar1 = d.a1 + Rational(3) * f * d.sigma1 + Rational(4 * s.l()) * f * d.kappa1;
  r.obstruction = d.kappa27;
  r.scalar_rate = Rational(2) * f * r.abar0;
  r.three_rate = Rational(2) * r.abar0 * s.phi() +
                 Rational(2 * s.l()) * hodge(q, wedge(r.abar1, s.phi()));
  return r;
}

struct IsotropicRates {
  Rational scalar_constraint;  // <a^(3), theta1 ^ theta2 ^ theta3>
  Multivector three_rate;      // full expansion from the coherent triple
};

/// The isotropic expansion: the derivative of theta1^theta2^theta3 under a
/// connection coefficient, written through single contractions of the
/// triple. The triple must be orthogonal and isotropic.
inline IsotropicRates isotropic_rhs(const QuadraticSpace& q, int l, const Multivector& a_v,
                                    const std::array<Multivector, 3>& triple) {
  if (!a_v.is_truncated()) throw input_error("isotropic_rhs expects truncated a_v");
  for (const auto& t : triple)
    if (!t.is_homogeneous(1)) throw input_error("triple entries must be one-forms");
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Vec7 a{}, b{};
      for (const auto& [m, c] : triple[i].terms())
        a[std::countr_zero(static_cast<unsigned>(m))] = c;
      for (const auto& [m, c] : triple[j].terms())
        b[std::countr_zero(static_cast<unsigned>(m))] = c;
      if (q.pair_covectors(a, b) != 0)
        throw input_error("triple must be orthogonal and isotropic");
    }
  const Multivector& th = triple[0];
  const Multivector& te = triple[1];
  const Multivector& et = triple[2];
  Multivector phi = wedge(th, wedge(te, et));
  Multivector a0 = a_v.grade(0), a1 = a_v.grade(1), a2 = a_v.grade(2), a3 = a_v.grade(3);
  IsotropicRates r;
  r.scalar_constraint = inner(q, a3, phi);
  Multivector rate = Rational(2) * a0.scalar_part() * phi +
                     Rational(2 * l) * hodge(q, wedge(a1, phi));
  // -2[(a2 tri1 th)^te^et - (a2 tri1 te)^th^et + (a2 tri1 et)^th^te]
  rate -= Rational(2) * (wedge(gen_product(q, a2, th, 1), wedge(te, et)) -
                         wedge(gen_product(q, a2, te, 1), wedge(th, et)) +
                         wedge(gen_product(q, a2, et, 1), wedge(th, te)));
  // +2l*[(a3 tri1 th)^te^et - (a3 tri1 te)^th^et + (a3 tri1 et)^th^te]
  rate += Rational(2 * l) *
          hodge(q, wedge(gen_product(q, a3, th, 1), wedge(te, et)) -
                       wedge(gen_product(q, a3, te, 1), wedge(th, et)) +
                       wedge(gen_product(q, a3, et, 1), wedge(th, te)));
  r.three_rate = rate;
  return r;
}

}  // namespace ka
