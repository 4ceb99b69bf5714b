/// @file spinor_module.hpp
/// The irreducible real paired Clifford module of a diagonal signature-(4,3)
/// metric: eight-dimensional spinor space, seven real gamma generators, the
/// admissible symmetric pairing, quantization of truncated forms and the
/// spinor square maps.
///
/// Only diagonal +/-1 metrics are supported here. Facts about null frames
/// are checked at the algebra level (see square_classifier.hpp); spinor
/// computations stay in orthonormal frames where basis covectors are
/// invertible in the Clifford algebra.

#pragma once

#include "ka/linalg.hpp"
#include "ka/quadratic_space.hpp"

#include <array>
#include <memory>
#include <vector>

namespace ka {

using Spinor = std::array<Rational, 8>;

inline Spinor spinor_scale(const Rational& t, const Spinor& s) {
  Spinor r;
  for (int i = 0; i < 8; ++i) r[i] = t * s[i];
  return r;
}

inline bool spinor_is_zero(const Spinor& s) {
  for (const auto& x : s)
    if (x != 0) return false;
  return true;
}

inline Spinor parse_spinor(const std::string& text) {
  Spinor s;
  size_t i = 0;
  for (int k = 0; k < 8; ++k) {
    s[k] = parse_rational_at(text, i);
    detail::skip_ws(text, i);
    if (k < 7) {
      if (i >= text.size() || text[i] != ',')
        throw input_error("expected ',' between spinor components", static_cast<long>(i));
      ++i;
    }
  }
  detail::skip_ws(text, i);
  if (i != text.size()) throw input_error("trailing characters after spinor", static_cast<long>(i));
  return s;
}

struct SpinorClassification {
  Rational pseudo_norm;  // B(eps, eps)
  bool isotropic = false;
};

class PairedSpinorModule {
 public:
  /// Builds the module for the diagonal metric diag(signs) (four +1, three
  /// -1) with volume sign l: gamma matrices by iterated real 2x2 tensor
  /// blocks, then one generator flipped if needed so that gamma(nu) = l Id;
  /// the admissible pairing is solved as the one-dimensional space of
  /// symmetric solutions of gamma^T B = -B gamma over the generators.
  PairedSpinorModule(const std::array<int, 7>& signs, int l) : space_(make_space(signs)), l_(l) {
    if (l != 1 && l != -1) throw input_error("l must be +1 or -1");
    int plus = 0;
    for (int s : signs) {
      if (s != 1 && s != -1) throw input_error("signature entries must be +1 or -1");
      if (s == 1) ++plus;
    }
    if (plus != 4) throw input_error("signature must have four +1 and three -1 entries");
    build_gammas(signs);
    fix_volume_sign();
    solve_pairing();
    build_quantization();
  }

  const QuadraticSpace& space() const { return space_; }
  int l() const { return l_; }
  const Mat& gamma(int i) const { return gammas_[i]; }  // 0-based
  const Mat& pairing() const { return pairing_; }

  Rational pair(const Spinor& a, const Spinor& b) const {
    Rational r(0);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (pairing_(i, j) != 0 && a[i] != 0 && b[j] != 0) r += a[i] * pairing_(i, j) * b[j];
    return r;
  }

  SpinorClassification classify(const Spinor& eps) const {
    SpinorClassification c;
    c.pseudo_norm = pair(eps, eps);
    c.isotropic = c.pseudo_norm == 0;
    return c;
  }

  /// Quantization of a truncated form: the algebra morphism
  /// (Lambda^<, vee) -> End(Sigma) sending each blade to the ordered
  /// product of its gamma generators.
  Mat quantize(const Multivector& a) const {
    if (!a.is_truncated()) throw input_error("quantize expects degree <= 3");
    Mat out(8, 8);
    for (const auto& [m, c] : a.terms()) {
      const Mat& bm = blade_matrix_[m];
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          if (bm(i, j) != 0) out(i, j) += c * bm(i, j);
    }
    return out;
  }

  /// Inverse of quantize on truncated forms (exact linear solve).
  Multivector dequantize(const Mat& endo) const {
    std::vector<Rational> rhs(64);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) rhs[i * 8 + j] = endo(i, j);
    std::vector<Rational> x = dequantizer_->solve(rhs);
    Multivector out;
    for (size_t t = 0; t < low_blades_.size(); ++t)
      if (x[t] != 0) out += Multivector::blade(low_blades_[t], x[t]);
    return out;
  }

  /// Spinor square map: the truncated form whose quantization is
  /// mu * eps (x) B(-, eps).
  Multivector square(const Spinor& eps, int mu = +1) const {
    if (mu != 1 && mu != -1) throw input_error("mu must be +1 or -1");
    Mat endo(8, 8);
    std::array<Rational, 8> beps{};
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k)
        if (pairing_(j, k) != 0 && eps[k] != 0) beps[j] += pairing_(j, k) * eps[k];
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        Rational v = eps[i] * beps[j];
        endo(i, j) = mu > 0 ? v : Rational(-v);
      }
    return dequantize(endo);
  }

  /// The classical expansion of the positive square over an orthonormal
  /// basis: (1/8) sum_k sum_{i1<...<ik} B(g_{ik}^{-1}...g_{i1}^{-1} eps, eps)
  /// e^{i1...ik}. Valid because every basis covector is invertible here.
  Multivector square_by_sum(const Spinor& eps, int mu = +1) const {
    Multivector out;
    for (BladeMask m : low_blades_) {
      // apply gamma(e^{i1})^{-1} first, then i2, ...
      Spinor v = eps;
      for (int i = 0; i < 7; ++i) {
        if (!(m & (1 << i))) continue;
        // gamma^2 = h^{ii} Id, so gamma^{-1} = h^{ii} gamma for h^{ii}=+-1
        Spinor w{};
        for (int r = 0; r < 8; ++r)
          for (int c = 0; c < 8; ++c)
            if (gammas_[i](r, c) != 0 && v[c] != 0) w[r] += gammas_[i](r, c) * v[c];
        if (space_.inverse_metric()(i, i) < 0)
          for (auto& x : w) x = -x;
        v = w;
      }
      Rational coeff = Rational(mu) * pair(v, eps) / 8;
      if (coeff != 0) out += Multivector::blade(m, coeff);
    }
    return out;
  }

 private:
  static QuadraticSpace make_space(const std::array<int, 7>& signs) {
    return QuadraticSpace::diagonal(signs);
  }

  static Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < a.cols(); ++j) {
        if (a(i, j) == 0) continue;
        for (size_t k = 0; k < b.rows(); ++k)
          for (size_t l = 0; l < b.cols(); ++l)
            if (b(k, l) != 0) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
      }
    return r;
  }

  void build_gammas(const std::array<int, 7>& signs) {
    Mat P(2, 2), Q(2, 2), E(2, 2), I2 = Mat::identity(2);
    P(0, 1) = 1;
    P(1, 0) = 1;  // squares to +1
    Q(0, 0) = 1;
    Q(1, 1) = -1;  // squares to +1
    E(0, 1) = 1;
    E(1, 0) = -1;  // squares to -1
    // Reference anticommuting family with squares (+,+,-,-,+,+,-).
    std::array<Mat, 7> ref = {kron(P, kron(I2, I2)), kron(Q, kron(I2, I2)),
                              kron(E, kron(P, I2)), kron(E, kron(Q, I2)),
                              kron(E, kron(E, P)),  kron(E, kron(E, Q)),
                              kron(E, kron(E, E))};
    std::array<int, 7> ref_sq = {1, 1, -1, -1, 1, 1, -1};
    std::array<bool, 7> used{};
    for (int i = 0; i < 7; ++i) {
      int pick = -1;
      for (int j = 0; j < 7; ++j)
        if (!used[j] && ref_sq[j] == signs[i]) {
          pick = j;
          break;
        }
      gammas_[i] = ref[pick];
      used[pick] = true;
    }
  }

  void fix_volume_sign() {
    Mat vol = gammas_[0];
    for (int i = 1; i < 7; ++i) vol = vol * gammas_[i];
    if (vol == Mat::identity(8) * Rational(-l_)) {
      // Flip one generator; Clifford relations are insensitive to the sign.
      gammas_[0] = gammas_[0] * Rational(-1);
    } else if (vol != Mat::identity(8) * Rational(l_)) {
      throw internal_error("volume element is not +-identity");
    }
  }

  void solve_pairing() {
    // Unknown: symmetric B (36 parameters), constraints gamma^T B + B gamma = 0.
    std::vector<std::pair<int, int>> params;
    for (int i = 0; i < 8; ++i)
      for (int j = i; j < 8; ++j) params.emplace_back(i, j);
    Mat sys(7 * 64, params.size());
    auto bval = [&](int p, int r, int c) -> int {
      auto [i, j] = params[p];
      if (r == i && c == j) return 1;
      if (r == j && c == i) return 1;
      return 0;
    };
    for (int g = 0; g < 7; ++g) {
      const Mat& gm = gammas_[g];
      for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
          size_t row = g * 64 + r * 8 + c;
          for (size_t p = 0; p < params.size(); ++p) {
            // (gamma^T B + B gamma)(r,c) = sum_k gamma(k,r) B(k,c) + B(r,k) gamma(k,c)
            Rational v(0);
            for (int k = 0; k < 8; ++k) {
              if (gm(k, r) != 0 && bval(p, k, c)) v += gm(k, r) * bval(p, k, c);
              if (gm(k, c) != 0 && bval(p, r, k)) v += Rational(bval(p, r, k)) * gm(k, c);
            }
            if (v != 0) sys(row, p) = v;
          }
        }
    }
    auto basis = nullspace(std::move(sys));
    if (basis.size() != 1)
      throw internal_error("admissible pairing space is not one-dimensional (dim = " +
                           std::to_string(basis.size()) + ")");
    Mat b(8, 8);
    for (size_t p = 0; p < params.size(); ++p) {
      auto [i, j] = params[p];
      b(i, j) = basis[0][p];
      b(j, i) = basis[0][p];
    }
    // Deterministic normalization: first nonzero entry in row-major order
    // becomes +1.
    Rational lead(0);
    for (int i = 0; i < 8 && lead == 0; ++i)
      for (int j = 0; j < 8 && lead == 0; ++j)
        if (b(i, j) != 0) lead = b(i, j);
    pairing_ = b * (Rational(1) / lead);
  }

  void build_quantization() {
    low_blades_.clear();
    for (int m = 0; m < kBlades; ++m)
      if (blade_degree(static_cast<BladeMask>(m)) <= 3)
        low_blades_.push_back(static_cast<BladeMask>(m));
    // Psi(e^{i1...ik}) = gamma_{i1} ... gamma_{ik} (ascending), legitimate
    // because the basis is orthogonal.
    for (int m = 0; m < kBlades; ++m) {
      Mat acc = Mat::identity(8);
      for (int i = 0; i < 7; ++i)
        if (m & (1 << i)) acc = acc * gammas_[i];
      blade_matrix_[m] = std::move(acc);
    }
    Mat quant(64, 64);
    for (size_t t = 0; t < low_blades_.size(); ++t) {
      const Mat& bm = blade_matrix_[low_blades_[t]];
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) quant(i * 8 + j, t) = bm(i, j);
    }
    dequantizer_ = std::make_shared<SolvedSystem>(quant);
  }

  QuadraticSpace space_;
  int l_;
  std::array<Mat, 7> gammas_;
  Mat pairing_;
  std::array<Mat, kBlades> blade_matrix_;
  std::vector<BladeMask> low_blades_;
  std::shared_ptr<const SolvedSystem> dequantizer_;
};

}  // namespace ka
