/// @file metric_lab.hpp
/// Exact symbolic geometry of the R^7 metric ansatz
///   g = sum_i (H_i dx_i (x) dx_i + E_i dx_i (.) dy_i) + G dz (x) dz
/// with polynomial coefficient functions: Christoffel symbols, covariant
/// derivatives of the dx_i, the minimal contorsion preserving the isotropic
/// triple (E_1 dx_1, E_2 dx_2, E_3 dx_3), involutivity, scalar curvature
/// and its numeric cross-check.
///
/// Every denominator that ever appears is a monomial in the nonvanishing
/// atoms E_1, E_2, E_3, G, so rational functions are carried as
/// polynomial numerators with per-atom exponents and only expanded into
/// general RatFun7 values at the public boundary.

#pragma once

#include "ka/multivector.hpp"
#include "ka/poly.hpp"
#include "ka/quadratic_space.hpp"
#include "ka/square_classifier.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace ka {

// Coordinate indices in the fixed order (x1, y1, x2, y2, x3, y3, z).
inline constexpr int kX1 = 0, kY1 = 1, kX2 = 2, kY2 = 3, kX3 = 4, kY3 = 5, kZ = 6;
inline int coord_x(int i) { return 2 * i; }      // i = 0,1,2
inline int coord_y(int i) { return 2 * i + 1; }  // i = 0,1,2

/// Numerator over a monomial denominator E1^a E2^b E3^c G^d.
struct MetricFun {
  Poly7 num;
  std::array<int, 4> dpow{0, 0, 0, 0};

  bool is_zero() const { return num.is_zero(); }
};

class AnsatzMetric {
 public:
  AnsatzMetric(std::array<Poly7, 3> h, std::array<Poly7, 3> e, Poly7 g)
      : H_(std::move(h)), E_(std::move(e)), G_(std::move(g)) {
    for (const auto& ei : E_)
      if (ei.is_zero()) throw input_error("E coefficients must not be identically zero");
    if (G_.is_zero()) throw input_error("G coefficient must not be identically zero");
    atoms_ = {E_[0], E_[1], E_[2], G_};
    build_metric();
  }

  const std::array<Poly7, 3>& H() const { return H_; }
  const std::array<Poly7, 3>& E() const { return E_; }
  const Poly7& G() const { return G_; }

  /// Metric components (polynomials).
  const Poly7& g(int a, int b) const { return g_[a][b]; }
  /// Inverse metric components.
  const MetricFun& ginv(int a, int b) const { return ginv_[a][b]; }

  // -- exact arithmetic on monomial-denominator functions ------------------

  MetricFun from_poly(const Poly7& p) const { return MetricFun{p, {0, 0, 0, 0}}; }

  MetricFun add(const MetricFun& a, const MetricFun& b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    MetricFun r;
    for (int k = 0; k < 4; ++k) r.dpow[k] = std::max(a.dpow[k], b.dpow[k]);
    Poly7 na = a.num, nb = b.num;
    for (int k = 0; k < 4; ++k) {
      for (int t = a.dpow[k]; t < r.dpow[k]; ++t) na *= atoms_[k];
      for (int t = b.dpow[k]; t < r.dpow[k]; ++t) nb *= atoms_[k];
    }
    r.num = na + nb;
    if (r.num.is_zero()) r.dpow = {0, 0, 0, 0};
    return r;
  }

  MetricFun sub(const MetricFun& a, const MetricFun& b) const { return add(a, neg(b)); }
  MetricFun neg(const MetricFun& a) const { return MetricFun{-a.num, a.dpow}; }

  MetricFun mul(const MetricFun& a, const MetricFun& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    MetricFun r;
    r.num = a.num * b.num;
    for (int k = 0; k < 4; ++k) r.dpow[k] = a.dpow[k] + b.dpow[k];
    return r;
  }

  MetricFun scale(const Rational& s, const MetricFun& a) const {
    if (s == 0) return {};
    return MetricFun{Poly7(s) * a.num, a.dpow};
  }

  /// d/dv by the quotient rule over the atom monomial.
  MetricFun diff(const MetricFun& a, int v) const {
    if (a.is_zero()) return {};
    // (n / prod A^p)' = [n' prod A - n sum_k p_k A_k' prod_{j!=k} A_j] / prod A^{p+1}
    bool flat = a.dpow == std::array<int, 4>{0, 0, 0, 0};
    if (flat) return MetricFun{a.num.diff(v), {0, 0, 0, 0}};
    Poly7 prod_all(Rational(1));
    for (int k = 0; k < 4; ++k)
      if (a.dpow[k] > 0) prod_all *= atoms_[k];
    Poly7 n = a.num.diff(v) * prod_all;
    for (int k = 0; k < 4; ++k) {
      if (a.dpow[k] == 0) continue;
      Poly7 da = atoms_[k].diff(v);
      if (da.is_zero()) continue;
      Poly7 rest(Rational(1));
      for (int j = 0; j < 4; ++j)
        if (j != k && a.dpow[j] > 0) rest *= atoms_[j];
      n -= Poly7(Rational(a.dpow[k])) * da * rest * a.num;
    }
    MetricFun r;
    r.num = std::move(n);
    for (int k = 0; k < 4; ++k) r.dpow[k] = a.dpow[k] > 0 ? a.dpow[k] + 1 : 0;
    if (r.num.is_zero()) r.dpow = {0, 0, 0, 0};
    return r;
  }

  RatFun7 to_ratfun(const MetricFun& a) const {
    Poly7 den(Rational(1));
    for (int k = 0; k < 4; ++k)
      for (int t = 0; t < a.dpow[k]; ++t) den *= atoms_[k];
    return RatFun7(a.num, den);
  }

  Rational eval(const MetricFun& a, const std::array<Rational, kNumVars>& pt) const {
    Rational d(1);
    for (int k = 0; k < 4; ++k) {
      if (a.dpow[k] == 0) continue;
      Rational av = atoms_[k].eval(pt);
      if (av == 0) throw eval_error("ansatz coefficient vanishes at evaluation point");
      for (int t = 0; t < a.dpow[k]; ++t) d *= av;
    }
    return a.num.eval(pt) / d;
  }

  bool equal(const MetricFun& a, const MetricFun& b) const { return sub(a, b).is_zero(); }

  /// Exact metric value at a point (must be invertible there).
  Mat metric_at(const std::array<Rational, kNumVars>& pt) const {
    Mat m(7, 7);
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b) m(a, b) = g_[a][b].eval(pt);
    return m;
  }

 private:
  void build_metric() {
    for (auto& row : g_)
      for (auto& e : row) e = Poly7();
    for (int i = 0; i < 3; ++i) {
      g_[coord_x(i)][coord_x(i)] = H_[i];
      g_[coord_x(i)][coord_y(i)] = E_[i];
      g_[coord_y(i)][coord_x(i)] = E_[i];
    }
    g_[kZ][kZ] = G_;
    // Block inverse: [[0, 1/E],[1/E, -H/E^2]] per pair, 1/G on z.
    for (auto& row : ginv_)
      for (auto& e : row) e = MetricFun{};
    for (int i = 0; i < 3; ++i) {
      std::array<int, 4> d1{0, 0, 0, 0};
      d1[i] = 1;
      std::array<int, 4> d2{0, 0, 0, 0};
      d2[i] = 2;
      ginv_[coord_x(i)][coord_y(i)] = MetricFun{Poly7(Rational(1)), d1};
      ginv_[coord_y(i)][coord_x(i)] = MetricFun{Poly7(Rational(1)), d1};
      ginv_[coord_y(i)][coord_y(i)] = MetricFun{-H_[i], d2};
    }
    ginv_[kZ][kZ] = MetricFun{Poly7(Rational(1)), {0, 0, 0, 1}};
  }

  std::array<Poly7, 3> H_, E_;
  Poly7 G_;
  std::array<Poly7, 4> atoms_;
  std::array<std::array<Poly7, 7>, 7> g_;
  std::array<std::array<MetricFun, 7>, 7> ginv_;
};

/// All Levi-Civita coefficients Gamma^k_{ij}, exact.
class Christoffel {
 public:
  explicit Christoffel(const AnsatzMetric& g) : g_(&g) {
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        for (int k = 0; k < 7; ++k) dg_[i][j][k] = g.g(i, j).diff(k);
    for (int k = 0; k < 7; ++k)
      for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j) {
          MetricFun acc;
          for (int l = 0; l < 7; ++l) {
            const MetricFun& up = g.ginv(k, l);
            if (up.is_zero()) continue;
            Poly7 sum = dg_[l][j][i] + dg_[l][i][j] - dg_[i][j][l];
            if (sum.is_zero()) continue;
            acc = g.add(acc, g.mul(up, g.from_poly(sum)));
          }
          gamma_[k][i][j] = g.scale(Rational(1, 2), acc);
          gamma_[k][j][i] = gamma_[k][i][j];
        }
  }

  const AnsatzMetric& metric() const { return *g_; }
  const MetricFun& gamma(int k, int i, int j) const { return gamma_[k][i][j]; }

  /// (nabla_a dx^c)(b) = -Gamma^c_{ab}.
  MetricFun nabla_dx(int c, int a, int b) const { return g_->neg(gamma_[c][a][b]); }

 private:
  const AnsatzMetric* g_;
  std::array<std::array<std::array<MetricFun, 7>, 7>, 7> gamma_;
  std::array<std::array<std::array<Poly7, 7>, 7>, 7> dg_;
};

/// Contorsion A(u, v, w), antisymmetric in (v, w); components are exact.
class ContorsionField {
 public:
  explicit ContorsionField(const AnsatzMetric& g) : g_(&g) {}

  const MetricFun& at(int u, int v, int w) const { return a_[u][v][w]; }

  void set(int u, int v, int w, const MetricFun& val) {
    a_[u][v][w] = val;
    a_[u][w][v] = g_->neg(val);
  }

  const AnsatzMetric& metric() const { return *g_; }

 private:
  const AnsatzMetric* g_;
  std::array<std::array<std::array<MetricFun, 7>, 7>, 7> a_{};
};

/// The contorsion forced by preservation of the triple: the (y_i, z) and
/// (y_i, y_j) slots are determined by the involutivity conditions,
///   A(-, dy_i, dz)   = (1/2)[(dE_i/dz) dx_i - (dG/dy_i) dz],
///   A(-, dy_i, dy_j) = (1/2)[(dE_i/dy_j) dx_i - (dE_j/dy_i) dx_j],
/// and all components not forced vanish.
inline ContorsionField contorsion_minimal(const AnsatzMetric& g) {
  ContorsionField a(g);
  const Rational half(1, 2);
  for (int i = 0; i < 3; ++i) {
    Poly7 dEz = g.E()[i].diff(kZ);
    Poly7 dGy = g.G().diff(coord_y(i));
    if (!dEz.is_zero())
      a.set(coord_x(i), coord_y(i), kZ, g.from_poly(Poly7(half) * dEz));
    if (!dGy.is_zero()) a.set(kZ, coord_y(i), kZ, g.from_poly(Poly7(-half) * dGy));
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      Poly7 dij = g.E()[i].diff(coord_y(j));
      Poly7 dji = g.E()[j].diff(coord_y(i));
      if (!dij.is_zero())
        a.set(coord_x(i), coord_y(i), coord_y(j), g.from_poly(Poly7(half) * dij));
      if (!dji.is_zero())
        a.set(coord_x(j), coord_y(i), coord_y(j), g.from_poly(Poly7(-half) * dji));
    }
  }
  return a;
}

/// For every direction w and each i, the connection with contorsion a must
/// keep dx_i inside span{dx_1, dx_2, dx_3}:
///   (nabla_w dx_i)(dz-slot) + E_i^{-1} A(w, y_i, z) = 0
///   (nabla_w dx_i)(y_j-slot) + E_i^{-1} A(w, y_i, y_j) = 0.
inline bool involutivity_check(const AnsatzMetric& g, const ContorsionField& a) {
  Christoffel ch(g);
  for (int w = 0; w < 7; ++w) {
    for (int i = 0; i < 3; ++i) {
      std::array<int, 4> einv{0, 0, 0, 0};
      einv[i] = 1;
      {
        MetricFun lhs = ch.nabla_dx(coord_x(i), w, kZ);
        MetricFun corr = g.mul(MetricFun{Poly7(Rational(1)), einv}, a.at(w, coord_y(i), kZ));
        if (!g.add(lhs, corr).is_zero()) return false;
      }
      for (int j = 0; j < 3; ++j) {
        MetricFun lhs = ch.nabla_dx(coord_x(i), w, coord_y(j));
        MetricFun corr =
            g.mul(MetricFun{Poly7(Rational(1)), einv}, a.at(w, coord_y(i), coord_y(j)));
        if (!g.add(lhs, corr).is_zero()) return false;
      }
    }
  }
  return true;
}

/// Ricci tensor component R_{jk}, exact.
inline MetricFun ricci_component(const AnsatzMetric& g, const Christoffel& ch, int j, int k) {
  MetricFun acc;
  for (int i = 0; i < 7; ++i) {
    acc = g.add(acc, g.diff(ch.gamma(i, j, k), i));
    acc = g.sub(acc, g.diff(ch.gamma(i, i, k), j));
    for (int m = 0; m < 7; ++m) {
      const MetricFun& g1 = ch.gamma(i, i, m);
      const MetricFun& g2 = ch.gamma(m, j, k);
      if (!g1.is_zero() && !g2.is_zero()) acc = g.add(acc, g.mul(g1, g2));
      const MetricFun& g3 = ch.gamma(i, j, m);
      const MetricFun& g4 = ch.gamma(m, i, k);
      if (!g3.is_zero() && !g4.is_zero()) acc = g.sub(acc, g.mul(g3, g4));
    }
  }
  return acc;
}

inline MetricFun scalar_curvature_fun(const AnsatzMetric& g) {
  Christoffel ch(g);
  MetricFun acc;
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) {
      const MetricFun& up = g.ginv(j, k);
      if (up.is_zero()) continue;
      MetricFun r = ricci_component(g, ch, j, k);
      if (!r.is_zero()) acc = g.add(acc, g.mul(up, r));
    }
  return acc;
}

inline RatFun7 scalar_curvature(const AnsatzMetric& g) { return g.to_ratfun(scalar_curvature_fun(g)); }

/// sum_i E_i^{-2} d^2 H_i / dy_i^2, the scalar-flatness criterion of the
/// x-only family.
inline MetricFun scalar_flat_condition_fun(const AnsatzMetric& g) {
  MetricFun acc;
  for (int i = 0; i < 3; ++i) {
    Poly7 h2 = g.H()[i].diff(coord_y(i)).diff(coord_y(i));
    if (h2.is_zero()) continue;
    std::array<int, 4> d{0, 0, 0, 0};
    d[i] = 2;
    acc = g.add(acc, MetricFun{h2, d});
  }
  return acc;
}

inline RatFun7 scalar_flat_condition(const AnsatzMetric& g) {
  return g.to_ratfun(scalar_flat_condition_fun(g));
}

// ---------------------------------------------------------------------------
// Floating-point finite-difference curvature (the numeric oracle; the only
// non-exact computation in the library).

class NumericCurvature {
 public:
  explicit NumericCurvature(const AnsatzMetric& g) : g_(&g) {}

  double scalar(const std::array<double, kNumVars>& pt, double h = 1e-4) const {
    // Ricci R_jk = dGamma^i_jk/dx_i - dGamma^i_ik/dx_j + G G - G G, then
    // contract with the numeric inverse metric.
    std::array<std::array<std::array<double, 7>, 7>, 7> dgamma;  // [d][k][ij]
    auto gam = [&](const std::array<double, kNumVars>& p) { return christoffel_at(p, h); };
    auto base = gam(pt);
    std::array<std::array<std::array<std::array<double, 7>, 7>, 7>, 7> grad{};
    for (int d = 0; d < 7; ++d) {
      auto pp = pt, pm = pt;
      pp[d] += h;
      pm[d] -= h;
      auto gp = gam(pp), gm = gam(pm);
      for (int k = 0; k < 7; ++k)
        for (int i = 0; i < 7; ++i)
          for (int j = 0; j < 7; ++j) grad[d][k][i][j] = (gp[k][i][j] - gm[k][i][j]) / (2 * h);
    }
    (void)dgamma;
    std::array<std::array<double, 7>, 7> ric{};
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        double acc = 0;
        for (int i = 0; i < 7; ++i) {
          acc += grad[i][i][j][k] - grad[j][i][i][k];
          for (int m = 0; m < 7; ++m)
            acc += base[i][i][m] * base[m][j][k] - base[i][j][m] * base[m][i][k];
        }
        ric[j][k] = acc;
      }
    auto gi = inverse_at(pt);
    double s = 0;
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) s += gi[j][k] * ric[j][k];
    return s;
  }

 private:
  std::array<std::array<double, 7>, 7> metric_at(const std::array<double, kNumVars>& pt) const {
    std::array<std::array<double, 7>, 7> m{};
    for (int i = 0; i < 3; ++i) {
      m[coord_x(i)][coord_x(i)] = g_->H()[i].eval_double(pt);
      double e = g_->E()[i].eval_double(pt);
      m[coord_x(i)][coord_y(i)] = e;
      m[coord_y(i)][coord_x(i)] = e;
    }
    m[kZ][kZ] = g_->G().eval_double(pt);
    return m;
  }

  std::array<std::array<double, 7>, 7> inverse_at(const std::array<double, kNumVars>& pt) const {
    auto m = metric_at(pt);
    // Gauss-Jordan, partial pivoting.
    std::array<std::array<double, 14>, 7> aug{};
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) aug[i][j] = m[i][j];
      aug[i][7 + i] = 1;
    }
    for (int c = 0; c < 7; ++c) {
      int p = c;
      for (int r = c + 1; r < 7; ++r)
        if (std::fabs(aug[r][c]) > std::fabs(aug[p][c])) p = r;
      std::swap(aug[p], aug[c]);
      double inv = 1.0 / aug[c][c];
      for (int j = 0; j < 14; ++j) aug[c][j] *= inv;
      for (int r = 0; r < 7; ++r) {
        if (r == c) continue;
        double f = aug[r][c];
        for (int j = 0; j < 14; ++j) aug[r][j] -= f * aug[c][j];
      }
    }
    std::array<std::array<double, 7>, 7> out{};
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) out[i][j] = aug[i][7 + j];
    return out;
  }

  std::array<std::array<std::array<double, 7>, 7>, 7> christoffel_at(
      const std::array<double, kNumVars>& pt, double h) const {
    std::array<std::array<std::array<double, 7>, 7>, 7> dg{};  // [l][j][d]
    for (int d = 0; d < 7; ++d) {
      auto pp = pt, pm = pt;
      pp[d] += h;
      pm[d] -= h;
      auto gp = metric_at(pp), gm = metric_at(pm);
      for (int l = 0; l < 7; ++l)
        for (int j = 0; j < 7; ++j) dg[l][j][d] = (gp[l][j] - gm[l][j]) / (2 * h);
    }
    auto gi = inverse_at(pt);
    std::array<std::array<std::array<double, 7>, 7>, 7> gam{};
    for (int k = 0; k < 7; ++k)
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
          double acc = 0;
          for (int l = 0; l < 7; ++l) acc += gi[k][l] * (dg[l][j][i] + dg[l][i][j] - dg[i][j][l]);
          gam[k][i][j] = 0.5 * acc;
        }
    return gam;
  }

  const AnsatzMetric* g_;
};

// ---------------------------------------------------------------------------
// Triple preservation report for the Levi-Civita case

struct LcParallelReport {
  bool involutive = false;              // nabla dx_i stays in span{dx}
  bool triples_isotropic = false;       // at all sample points
  bool squares_accepted = false;        // classifier verdict at all points
  bool used_full_square_check = false;  // the vee-based criterion ran
};

inline std::array<std::array<Rational, kNumVars>, 5> default_sample_points() {
  auto q = [](int n, int d) { return Rational(n, d); };
  return {{{q(1, 2), q(1, 3), q(-1, 2), q(2, 3), q(1, 5), q(-1, 3), q(1, 7)},
           {q(1, 1), q(-1, 2), q(1, 3), q(1, 4), q(-2, 3), q(1, 2), q(-1, 5)},
           {q(-1, 3), q(2, 5), q(1, 2), q(-1, 4), q(1, 3), q(2, 7), q(1, 2)},
           {q(2, 1), q(1, 5), q(-1, 3), q(1, 2), q(-1, 2), q(-1, 4), q(2, 5)},
           {q(-1, 2), q(-1, 3), q(2, 3), q(1, 7), q(1, 4), q(1, 3), q(-2, 3)}}};
}

namespace detail {
/// Variables actually appearing in a polynomial.
inline std::vector<int> poly_vars(const Poly7& p) {
  std::array<bool, kNumVars> used{};
  for (const auto& [e, c] : p.terms())
    for (int i = 0; i < kNumVars; ++i)
      if (e[i] > 0) used[i] = true;
  std::vector<int> out;
  for (int i = 0; i < kNumVars; ++i)
    if (used[i]) out.push_back(i);
  return out;
}
}  // namespace detail

/// Requires E_i and G to depend only on (x1, x2, x3); names the offending
/// variable otherwise. H_i are unconstrained.
inline void require_x_only(const AnsatzMetric& g) {
  auto check = [&](const Poly7& p, const std::string& what) {
    for (int v : detail::poly_vars(p))
      if (v != kX1 && v != kX2 && v != kX3)
        throw input_error(what + " depends on " + kVarNames[v] +
                          "; only x1, x2, x3 are allowed");
  };
  for (int i = 0; i < 3; ++i) check(g.E()[i], "E" + std::to_string(i + 1));
  check(g.G(), "G");
}

/// The isotropic triple (E_1 dx_1, E_2 dx_2, E_3 dx_3) evaluated at a point.
inline std::array<Multivector, 3> triple_at_point(const AnsatzMetric& g,
                                                  const std::array<Rational, kNumVars>& pt) {
  std::array<Multivector, 3> t;
  for (int i = 0; i < 3; ++i) {
    Rational e = g.E()[i].eval(pt);
    if (e == 0) throw eval_error("triple coefficient vanishes at sample point");
    t[i] = Multivector::covector(coord_x(i) + 1, e);
  }
  return t;
}

/// Pointwise Levi-Civita derivative of the triple wedge,
/// nabla_v (theta1 ^ theta2 ^ theta3), from the Christoffel symbols.
inline Multivector nabla_triple_at_point(const AnsatzMetric& g, const Christoffel& ch, int v,
                                         const std::array<Rational, kNumVars>& pt) {
  Poly7 w = g.E()[0] * g.E()[1] * g.E()[2];
  // d_v W . dx123
  BladeMask x123 = static_cast<BladeMask>((1 << kX1) | (1 << kX2) | (1 << kX3));
  Multivector out = Multivector::blade(x123, w.diff(v).eval(pt));
  Rational wv = w.eval(pt);
  // W . sum_i (nabla_v dx_i) ^ (other two dx's)
  for (int i = 0; i < 3; ++i) {
    Multivector ndx;
    for (int b = 0; b < 7; ++b) {
      Rational c = g.eval(ch.nabla_dx(coord_x(i), v, b), pt);
      if (c != 0) ndx += Multivector::covector(b + 1, c);
    }
    if (ndx.is_zero()) continue;
    Multivector rest(Rational(1));
    for (int j = 0; j < 3; ++j)
      if (j != i) rest = wedge(rest, Multivector::covector(coord_x(j) + 1));
    // keep the slot order dx_i ^ dx_j ^ dx_k by wedging in place of slot i
    Multivector term;
    if (i == 0)
      term = wedge(ndx, wedge(Multivector::covector(kX2 + 1), Multivector::covector(kX3 + 1)));
    else if (i == 1)
      term = wedge(Multivector::covector(kX1 + 1), wedge(ndx, Multivector::covector(kX3 + 1)));
    else
      term = wedge(Multivector::covector(kX1 + 1), wedge(Multivector::covector(kX2 + 1), ndx));
    out += wv * term;
  }
  return out;
}

/// Contorsion slice A(v, ., .) at a point, as a two-form.
inline Multivector contorsion_two_form_at(const AnsatzMetric& g, const ContorsionField& a, int v,
                                          const std::array<Rational, kNumVars>& pt) {
  Multivector out;
  for (int b = 0; b < 7; ++b)
    for (int c = b + 1; c < 7; ++c) {
      Rational val = g.eval(a.at(v, b, c), pt);
      if (val != 0)
        out += Multivector::blade(static_cast<BladeMask>((1 << b) | (1 << c)), val);
    }
  return out;
}

inline LcParallelReport lc_parallel_report(
    const AnsatzMetric& g,
    const std::array<std::array<Rational, kNumVars>, 5>& points = default_sample_points()) {
  require_x_only(g);
  LcParallelReport rep;
  ContorsionField zero(g);
  rep.involutive = involutivity_check(g, zero);
  rep.triples_isotropic = true;
  rep.squares_accepted = true;
  rep.used_full_square_check = true;
  for (const auto& pt : points) {
    Mat h = g.metric_at(pt);
    QuadraticSpace q(h);
    auto triple = triple_at_point(g, pt);
    for (int i = 0; i < 3 && rep.triples_isotropic; ++i)
      for (int j = i; j < 3; ++j) {
        Vec7 a{}, b{};
        for (const auto& [m, c] : triple[i].terms())
          a[std::countr_zero(static_cast<unsigned>(m))] = c;
        for (const auto& [m, c] : triple[j].terms())
          b[std::countr_zero(static_cast<unsigned>(m))] = c;
        if (q.pair_covectors(a, b) != 0) rep.triples_isotropic = false;
      }
    Multivector alpha = wedge(triple[0], wedge(triple[1], triple[2]));
    // Rescale the frame so the metric becomes unimodular: dy_i -> E_i dy_i
    // and, when G(pt) is a perfect square, dz -> sqrt(G) dz. In that frame
    // det h = -1 and the full vee-based criterion applies; otherwise fall
    // back to the factorization characterization.
    auto root = exact_sqrt(g.G().eval(pt));
    if (root) {
      Mat t(7, 7);
      for (int i = 0; i < 3; ++i) {
        t(coord_x(i), coord_x(i)) = 1;
        t(coord_y(i), coord_y(i)) = Rational(1) / g.E()[i].eval(pt);
      }
      t(kZ, kZ) = Rational(1) / *root;
      QuadraticSpace qn(t.transpose() * h * t);
      SquareVerdict v = check_square_conditions(qn, +1, alpha);
      if (!(v.is_square && v.kind == SquareKind::isotropic && v.triple)) rep.squares_accepted = false;
    } else {
      rep.used_full_square_check = false;
      auto f = isotropic_factorize(q, alpha);
      if (!f) rep.squares_accepted = false;
    }
  }
  return rep;
}

}  // namespace ka
