/// @file g2_structures.hpp
/// G2*-structures on a signature-(4,3) quadratic space: the intrinsic
/// characterization 6 c phi = l * (phi tri_1 phi) with <phi,phi> = -7c^2,
/// the two-form and three-form decompositions into irreducible pieces, the
/// traceless-symmetric embedding into the 27-dimensional component, and the
/// four contraction identities these decompositions satisfy.

#pragma once

#include "ka/quadratic_space.hpp"
#include "ka/stabilizer.hpp"

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ka {

/// A three-form phi with negative square norm satisfying the quadratic
/// characterization; kappa is the sign of the rational scale c.
class G2StarStructure {
 public:
  G2StarStructure(QuadraticSpace q, int l, int kappa, Rational c, Multivector phi)
      : q_(std::move(q)), l_(l), kappa_(kappa), c_(std::move(c)), phi_(std::move(phi)) {
    build_splitters();
  }

  const QuadraticSpace& space() const { return q_; }
  int l() const { return l_; }
  int kappa() const { return kappa_; }
  const Rational& c() const { return c_; }
  Rational c_squared() const { return c_ * c_; }
  const Multivector& phi() const { return phi_; }
  const Multivector& star_phi() const { return star_phi_; }

  /// omega = part7 + part14 with part7 in {iota_v phi} and part14 in the
  /// kernel of (. tri_1 phi).
  std::pair<Multivector, Multivector> split_two_form(const Multivector& omega) const {
    if (!omega.is_homogeneous(2)) throw input_error("split_two_form expects a two-form");
    std::vector<Rational> rhs = two_rhs(omega);
    std::vector<Rational> x = two_split_->solve(rhs);
    Multivector p7;
    for (int i = 0; i < 7; ++i)
      if (x[i] != 0) p7 += x[i] * two_basis7_[i];
    Multivector p14;
    for (int i = 0; i < 14; ++i)
      if (x[7 + i] != 0) p14 += x[7 + i] * two_basis14_[i];
    return {p7, p14};
  }

  struct ThreeSplit {
    Multivector part1, part7, part27;
  };

  ThreeSplit split_three_form(const Multivector& rho) const {
    if (!rho.is_homogeneous(3)) throw input_error("split_three_form expects a three-form");
    std::vector<Rational> x = three_split_->solve(three_rhs(rho));
    ThreeSplit s;
    if (x[0] != 0) s.part1 = x[0] * phi_;
    for (int i = 0; i < 7; ++i)
      if (x[1 + i] != 0) s.part7 += x[1 + i] * three_basis7_[i];
    for (int i = 0; i < 27; ++i)
      if (x[8 + i] != 0) s.part27 += x[8 + i] * three_basis27_[i];
    return s;
  }

  Multivector project_27(const Multivector& rho) const { return split_three_form(rho).part27; }

  /// Traceless h-symmetric matrices into the 27-dimensional component:
  /// A -> A_{ij} h^{jk} e^i wedge (iota_{e_k} phi).
  Multivector lambda27_embed(const Mat& a) const {
    if (a.rows() != 7 || a.cols() != 7) throw input_error("matrix must be 7x7");
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < i; ++j)
        if (a(i, j) != a(j, i)) throw input_error("matrix must be symmetric");
    Rational tr(0);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        if (q_.inverse_metric()(i, j) != 0 && a(i, j) != 0) tr += q_.inverse_metric()(i, j) * a(i, j);
    if (tr != 0) throw input_error("matrix must be h-traceless");
    Multivector rho;
    for (int i = 0; i < 7; ++i) {
      // raise the second index: A_i^k = sum_j A_{ij} h^{jk}
      for (int k = 0; k < 7; ++k) {
        Rational aik(0);
        for (int j = 0; j < 7; ++j)
          if (a(i, j) != 0 && q_.inverse_metric()(j, k) != 0)
            aik += a(i, j) * q_.inverse_metric()(j, k);
        if (aik == 0) continue;
        rho += aik * wedge(Multivector::covector(i + 1), interior_basis(k, phi_));
      }
    }
    return rho;
  }

  const std::array<Multivector, 7>& two_basis7() const { return two_basis7_; }
  const std::array<Multivector, 14>& two_basis14() const { return two_basis14_; }
  const std::array<Multivector, 7>& three_basis7() const { return three_basis7_; }
  const std::array<Multivector, 27>& three_basis27() const { return three_basis27_; }

 private:
  static std::vector<Rational> restrict_to(const Multivector& m, const std::vector<BladeMask>& idx) {
    std::vector<Rational> v(idx.size(), Rational(0));
    auto d = m.dense();
    for (size_t i = 0; i < idx.size(); ++i) v[i] = d[idx[i]];
    return v;
  }

  std::vector<Rational> two_rhs(const Multivector& m) const { return restrict_to(m, two_masks_); }
  std::vector<Rational> three_rhs(const Multivector& m) const {
    return restrict_to(m, three_masks_);
  }

  void build_splitters() {
    star_phi_ = hodge(q_, phi_);
    for (int mask = 0; mask < kBlades; ++mask) {
      int d = blade_degree(static_cast<BladeMask>(mask));
      if (d == 2) two_masks_.push_back(static_cast<BladeMask>(mask));
      if (d == 3) three_masks_.push_back(static_cast<BladeMask>(mask));
    }
    // Lambda^2_7 = {iota_v phi}.
    for (int i = 0; i < 7; ++i) two_basis7_[i] = interior_basis(i, phi_);
    // Lambda^2_14 = ker(. tri_1 phi) inside two-forms.
    {
      Mat op(three_masks_.size(), two_masks_.size());
      for (size_t c = 0; c < two_masks_.size(); ++c) {
        Multivector img = gen_product(q_, Multivector::blade(two_masks_[c]), phi_, 1);
        auto v = three_rhs(img);
        for (size_t r = 0; r < three_masks_.size(); ++r) op(r, c) = v[r];
      }
      auto null = nullspace(std::move(op));
      if (null.size() != 14)
        throw structure_error("two-form eigen-split failed: kernel dimension " +
                              std::to_string(null.size()));
      for (size_t i = 0; i < 14; ++i) {
        Multivector w;
        for (size_t c = 0; c < two_masks_.size(); ++c)
          if (null[i][c] != 0) w += Multivector::blade(two_masks_[c], null[i][c]);
        two_basis14_[i] = w;
      }
    }
    // Assemble the 21x21 two-form decomposition system.
    {
      Mat sys(two_masks_.size(), 21);
      for (int c = 0; c < 7; ++c) {
        auto v = two_rhs(two_basis7_[c]);
        for (size_t r = 0; r < two_masks_.size(); ++r) sys(r, c) = v[r];
      }
      for (int c = 0; c < 14; ++c) {
        auto v = two_rhs(two_basis14_[c]);
        for (size_t r = 0; r < two_masks_.size(); ++r) sys(r, 7 + c) = v[r];
      }
      try {
        two_split_ = std::make_shared<SolvedSystem>(sys);
      } catch (const structure_error&) {
        throw structure_error("two-form decomposition is not direct");
      }
    }
    // Lambda^3_7 = {*(phi wedge e^i)}.
    for (int i = 0; i < 7; ++i)
      three_basis7_[i] = hodge(q_, wedge(phi_, Multivector::covector(i + 1)));
    // Lambda^3_27 = {rho : rho wedge phi = 0, rho wedge *phi = 0}.
    {
      Mat op(7 + 1, three_masks_.size());
      for (size_t c = 0; c < three_masks_.size(); ++c) {
        Multivector b = Multivector::blade(three_masks_[c]);
        Multivector w4 = wedge(b, phi_);  // degree 6: 7 components
        auto d6 = w4.dense();
        int r = 0;
        for (int mask = 0; mask < kBlades; ++mask)
          if (blade_degree(static_cast<BladeMask>(mask)) == 6) op(r++, c) = d6[mask];
        Multivector w7 = wedge(b, star_phi_);
        op(7, c) = w7.coeff(kVolumeMask);
      }
      auto null = nullspace(std::move(op));
      if (null.size() != 27)
        throw structure_error("three-form split failed: 27-component dimension " +
                              std::to_string(null.size()));
      for (size_t i = 0; i < 27; ++i) {
        Multivector w;
        for (size_t c = 0; c < three_masks_.size(); ++c)
          if (null[i][c] != 0) w += Multivector::blade(three_masks_[c], null[i][c]);
        three_basis27_[i] = w;
      }
    }
    {
      Mat sys(three_masks_.size(), 35);
      auto v0 = three_rhs(phi_);
      for (size_t r = 0; r < three_masks_.size(); ++r) sys(r, 0) = v0[r];
      for (int c = 0; c < 7; ++c) {
        auto v = three_rhs(three_basis7_[c]);
        for (size_t r = 0; r < three_masks_.size(); ++r) sys(r, 1 + c) = v[r];
      }
      for (int c = 0; c < 27; ++c) {
        auto v = three_rhs(three_basis27_[c]);
        for (size_t r = 0; r < three_masks_.size(); ++r) sys(r, 8 + c) = v[r];
      }
      try {
        three_split_ = std::make_shared<SolvedSystem>(sys);
      } catch (const structure_error&) {
        throw structure_error("three-form decomposition is not direct");
      }
    }
  }

  QuadraticSpace q_;
  int l_, kappa_;
  Rational c_;
  Multivector phi_, star_phi_;
  std::vector<BladeMask> two_masks_, three_masks_;
  std::array<Multivector, 7> two_basis7_;
  std::array<Multivector, 14> two_basis14_;
  std::array<Multivector, 7> three_basis7_;
  std::array<Multivector, 27> three_basis27_;
  std::shared_ptr<const SolvedSystem> two_split_, three_split_;
};

/// The scale -<phi,phi>/7 was negative-norm but not a rational square, so
/// no exact structure exists at this normalization; rescale phi and retry.
class irrational_scale_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recognizes a G2*-structure: <phi,phi> < 0, the scale is a rational
/// square, and the quadratic characterization holds for one kappa.
inline std::optional<G2StarStructure> check_g2star(const QuadraticSpace& q, int l,
                                                   const Multivector& phi) {
  if (l != 1 && l != -1) throw input_error("l must be +1 or -1");
  if (!phi.is_homogeneous(3)) throw input_error("phi must be a three-form");
  Rational norm = inner(q, phi, phi);
  if (norm >= 0) return std::nullopt;
  Rational c2 = -norm / 7;
  auto c0 = exact_sqrt(c2);
  if (!c0)
    throw irrational_scale_error("-<phi,phi>/7 = " + to_string(c2) +
                                 " is not a rational square; rescale phi");
  Multivector rhs = Rational(l) * hodge(q, gen_product(q, phi, phi, 1));
  for (int kappa : {+1, -1}) {
    Rational c = Rational(kappa) * *c0;
    if (Rational(6) * c * phi == rhs) return G2StarStructure(q, l, kappa, c, phi);
  }
  return std::nullopt;
}

struct LemmaIdentitiesReport {
  bool item1 = false;  // (iota_v phi) tri_1 phi = 3 l c * (phi wedge v_flat)
  bool item2 = false;  // omega tri_1 phi = 0 on the 14-dim component
  bool item3 = false;  // *((*(theta wedge phi)) tri_1 phi) = 3 l c *(theta wedge phi)
  bool item4 = false;  // *(rho tri_1 phi) = - l c rho on the 27-dim component
  bool all() const { return item1 && item2 && item3 && item4; }
};

/// The one-contraction operator rho -> *(rho tri_1 phi) acts on three-forms
/// with eigenvalues 6lc, 3lc and -lc on the 1-, 7- and 27-dimensional
/// components (trace zero). The -lc value on the 27-component is pinned by
/// the trace identity together with the other two eigenvalues.

/// Exact verification of the four contraction identities on spanning sets
/// plus deterministic random vectors.
inline LemmaIdentitiesReport lemma_identities_report(const G2StarStructure& s,
                                                     unsigned seed = 20240901) {
  const QuadraticSpace& q = s.space();
  Rational lc = Rational(s.l()) * s.c();
  LemmaIdentitiesReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-5, 5);
  auto rnd_vec = [&] {
    Vec7 v{};
    for (auto& x : v) x = coeff(rng);
    return v;
  };
  rep.item1 = true;
  for (int t = 0; t < 10; ++t) {
    Vec7 v = rnd_vec();
    Multivector iv;
    for (int i = 0; i < 7; ++i)
      if (v[i] != 0) iv += v[i] * interior_basis(i, s.phi());
    Multivector lhs = gen_product(q, iv, s.phi(), 1);
    Multivector vflat = flat(q, v);
    Multivector rhs = Rational(3) * lc * hodge(q, wedge(s.phi(), vflat));
    if (lhs != rhs) rep.item1 = false;
  }
  rep.item2 = true;
  for (const auto& om : s.two_basis14())
    if (!gen_product(q, om, s.phi(), 1).is_zero()) rep.item2 = false;
  rep.item3 = true;
  for (int t = 0; t < 10; ++t) {
    Vec7 v = rnd_vec();
    Multivector theta;
    for (int i = 0; i < 7; ++i)
      if (v[i] != 0) theta += Multivector::covector(i + 1, v[i]);
    Multivector stp = hodge(q, wedge(theta, s.phi()));
    Multivector lhs = hodge(q, gen_product(q, stp, s.phi(), 1));
    Multivector rhs = Rational(3) * lc * stp;
    if (lhs != rhs) rep.item3 = false;
  }
  rep.item4 = true;
  for (const auto& rho : s.three_basis27()) {
    Multivector lhs = hodge(q, gen_product(q, rho, s.phi(), 1));
    if (lhs != -lc * rho) rep.item4 = false;
  }
  return rep;
}

/// The canonical three-form in its standard coordinate expression.
inline Multivector canonical_phi() {
  return parse_multivector("-e127 - e135 + e146 + e236 + e245 - e347 + e567");
}

struct G2Fixture {
  std::string signature;  // 7 chars of +/-
  int l = 0;
  int kappa = 0;
  std::string phi_text;
};

/// Searches all 35 diagonal (4,3) sign patterns and both values of l for
/// structures where the canonical three-form has norm exactly -7, the
/// quadratic characterization holds, the infinitesimal stabilizer has
/// dimension 14, and both irreducible decompositions have the right ranks.
/// Results are deterministic and sorted by (signature, l).
inline std::vector<G2Fixture> g2_fixture_search() {
  std::vector<G2Fixture> out;
  Multivector phi = canonical_phi();
  for (int neg = 0; neg < kBlades; ++neg) {
    if (blade_degree(static_cast<BladeMask>(neg)) != 3) continue;
    std::array<int, 7> signs;
    std::string sigstr;
    for (int i = 0; i < 7; ++i) {
      signs[i] = (neg & (1 << i)) ? -1 : 1;
      sigstr += signs[i] > 0 ? '+' : '-';
    }
    QuadraticSpace q = QuadraticSpace::diagonal(signs);
    if (inner(q, phi, phi) != -7) continue;
    for (int l : {+1, -1}) {
      std::optional<G2StarStructure> s;
      try {
        s = check_g2star(q, l, phi);
      } catch (const structure_error&) {
        continue;
      }
      if (!s) continue;
      if (stabilizer_algebra(q, phi).dim() != 14) continue;
      G2Fixture f;
      f.signature = sigstr;
      f.l = l;
      f.kappa = s->kappa();
      f.phi_text = phi.str();
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace ka
