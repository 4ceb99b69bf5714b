/// @file stabilizer.hpp
/// Infinitesimal stabilizers {M in so(h) : M . a = 0} of exterior forms and
/// exact structure analysis of the resulting Lie algebras: series, center,
/// Killing form, Killing radical and Salamon strings of nilpotent algebras.

#pragma once

#include "ka/quadratic_space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ka {

/// Derivation action of a gl(7) matrix on a multivector, with covectors
/// transforming by theta -> -theta o M.
inline Multivector infinitesimal_action(const Mat& m, const Multivector& a) {
  Mat c(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) c(i, j) = -m(i, j);
  return derivation_action(c, a);
}

inline std::vector<Rational> vec49(const Mat& m) {
  std::vector<Rational> v(49);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) v[i * 7 + j] = m(i, j);
  return v;
}

inline Mat mat49(const std::vector<Rational>& v) {
  Mat m(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) m(i, j) = v[i * 7 + j];
  return m;
}

inline Mat bracket(const Mat& a, const Mat& b) { return a * b - b * a; }

class LieSubalgebra;
struct LieStructureReport;

/// A rational-basis Lie subalgebra of so(h) for a fixed quadratic space.
class LieSubalgebra {
 public:
  LieSubalgebra(QuadraticSpace ambient, std::vector<Mat> basis)
      : ambient_(std::move(ambient)), basis_(std::move(basis)) {
    for (const auto& m : basis_) {
      Mat c = m.transpose() * ambient_.metric() + ambient_.metric() * m;
      if (!c.is_zero()) throw structure_error("basis element is not in so(h)");
    }
    compute_structure_constants();
  }

  const QuadraticSpace& ambient() const { return ambient_; }
  const std::vector<Mat>& basis() const { return basis_; }
  size_t dim() const { return basis_.size(); }

  /// c^k_{ij} with [b_i, b_j] = sum_k c^k_{ij} b_k.
  const Rational& structure_constant(size_t k, size_t i, size_t j) const {
    return sc_[(k * dim() + i) * dim() + j];
  }

  /// Expresses a matrix in the basis; nullopt when outside the span.
  std::optional<std::vector<Rational>> coordinates(const Mat& m) const {
    if (basis_.empty()) return m.is_zero() ? std::make_optional(std::vector<Rational>{}) : std::nullopt;
    Mat sys(49, dim());
    for (size_t c = 0; c < dim(); ++c) {
      auto v = vec49(basis_[c]);
      for (int r = 0; r < 49; ++r) sys(r, c) = v[r];
    }
    auto x = solve(std::move(sys), vec49(m));
    if (!x) return std::nullopt;
    // solve() gives some solution; verify exactly (basis may be dependent).
    Mat rec(7, 7);
    for (size_t c = 0; c < dim(); ++c) rec = rec + basis_[c] * (*x)[c];
    if (rec != m) return std::nullopt;
    return x;
  }

  /// Killing form K_ij = tr(ad_i ad_j), from the structure constants.
  Mat killing_form() const {
    size_t n = dim();
    Mat k(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rational acc(0);
        for (size_t a = 0; a < n; ++a)
          for (size_t b = 0; b < n; ++b) {
            const Rational& c1 = structure_constant(a, i, b);
            if (c1 == 0) continue;
            const Rational& c2 = structure_constant(b, j, a);
            if (c2 != 0) acc += c1 * c2;
          }
        k(i, j) = acc;
      }
    return k;
  }

 private:
  void compute_structure_constants() {
    size_t n = dim();
    sc_.assign(n * n * n, Rational(0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        Mat br = bracket(basis_[i], basis_[j]);
        auto x = coordinates(br);
        if (!x) throw structure_error("bracket does not close: not a subalgebra");
        for (size_t k = 0; k < n; ++k) {
          sc_[(k * n + i) * n + j] = (*x)[k];
          sc_[(k * n + j) * n + i] = -(*x)[k];
        }
      }
  }

  QuadraticSpace ambient_;
  std::vector<Mat> basis_;
  std::vector<Rational> sc_;
};

/// Exact nullspace of {M^T h + h M = 0, M . a = 0}; deterministic
/// echelonized basis over the 49 matrix entries.
inline LieSubalgebra stabilizer_algebra(const QuadraticSpace& q, const Multivector& a) {
  // Columns: the 49 entries of M. Rows: symmetry constraints then the
  // action on each blade component.
  std::vector<std::vector<Rational>> rows;
  // M^T h + h M = 0: symmetric 7x7 of constraints.
  for (int r = 0; r <= 6; ++r)
    for (int c = r; c <= 6; ++c) {
      std::vector<Rational> row(49, Rational(0));
      for (int k = 0; k < 7; ++k) {
        // (M^T h)(r,c) = sum_k M(k,r) h(k,c); (h M)(r,c) = sum_k h(r,k) M(k,c)
        row[k * 7 + r] += q.metric()(k, c);
        row[k * 7 + c] += q.metric()(r, k);
      }
      rows.push_back(std::move(row));
    }
  // Action rows: for each unit matrix E_ij the action is linear, so the
  // (blade, entry) coefficient matrix is assembled columnwise.
  std::vector<std::array<Rational, kBlades>> action_cols(49);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      Mat e(7, 7);
      e(i, j) = 1;
      action_cols[i * 7 + j] = infinitesimal_action(e, a).dense();
    }
  for (int m = 0; m < kBlades; ++m) {
    std::vector<Rational> row(49, Rational(0));
    bool any = false;
    for (int c = 0; c < 49; ++c) {
      row[c] = action_cols[c][m];
      if (row[c] != 0) any = true;
    }
    if (any) rows.push_back(std::move(row));
  }
  Mat sys(rows.size(), 49);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < 49; ++c) sys(r, c) = rows[r][c];
  auto null = nullspace(std::move(sys));
  std::vector<Mat> basis;
  basis.reserve(null.size());
  for (auto& v : null) basis.push_back(mat49(v));
  return LieSubalgebra(q, std::move(basis));
}

namespace detail {

/// Span of all brackets [x, y] for x in a, y in b (coordinates relative to
/// parent basis matrices).
inline std::vector<Mat> bracket_span(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& x : a)
    for (const auto& y : b) {
      Mat br = bracket(x, y);
      if (!br.is_zero()) rows.push_back(vec49(br));
    }
  if (rows.empty()) return {};
  Mat m(rows.size(), 49);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < 49; ++c) m(r, c) = rows[r][c];
  std::vector<size_t> pivots = rref(m);
  std::vector<Mat> out;
  for (size_t r = 0; r < pivots.size(); ++r) out.push_back(mat49(m.row(r)));
  return out;
}

inline bool contained_in_span(const std::vector<Mat>& family, const std::vector<Mat>& span) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& m : span) rows.push_back(vec49(m));
  size_t base = span_rank(rows);
  for (const auto& m : family) {
    auto r = rows;
    r.push_back(vec49(m));
    if (span_rank(r) != base) return false;
  }
  return true;
}

}  // namespace detail

struct LieStructureReport {
  size_t dim = 0;
  std::vector<size_t> derived_series_dims;        // starting at dim
  std::vector<size_t> lower_central_dims;         // starting at dim
  size_t center_dim = 0;
  size_t killing_rank = 0;
  size_t killing_radical_dim = 0;
  bool killing_radical_is_ideal = false;
  std::vector<size_t> killing_radical_lower_central_dims;
  size_t quotient_dim = 0;           // dim minus Killing radical
  size_t quotient_killing_rank = 0;  // Killing rank of the quotient algebra
};

/// Killing radical of L as a sub-Lie-algebra (basis of matrices).
inline std::vector<Mat> killing_radical_basis(const LieSubalgebra& l) {
  Mat k = l.killing_form();
  auto null = nullspace(std::move(k));
  std::vector<Mat> rad;
  for (const auto& coeffs : null) {
    Mat m(7, 7);
    for (size_t i = 0; i < l.dim(); ++i)
      if (coeffs[i] != 0) m = m + l.basis()[i] * coeffs[i];
    rad.push_back(std::move(m));
  }
  return rad;
}

inline std::vector<size_t> lower_central_dims_of(const std::vector<Mat>& basis) {
  std::vector<size_t> dims;
  std::vector<Mat> whole = basis;
  std::vector<Mat> cur = basis;
  dims.push_back(cur.size());
  while (!cur.empty()) {
    std::vector<Mat> next = detail::bracket_span(whole, cur);
    dims.push_back(next.size());
    if (next.size() == cur.size()) break;  // stabilized (non-nilpotent)
    cur = std::move(next);
  }
  return dims;
}

inline LieStructureReport lie_structure_report(const LieSubalgebra& l) {
  LieStructureReport r;
  r.dim = l.dim();
  // Derived series.
  {
    std::vector<Mat> cur = l.basis();
    r.derived_series_dims.push_back(cur.size());
    while (!cur.empty()) {
      std::vector<Mat> next = detail::bracket_span(cur, cur);
      r.derived_series_dims.push_back(next.size());
      if (next.size() == cur.size()) break;
      cur = std::move(next);
    }
  }
  r.lower_central_dims = lower_central_dims_of(l.basis());
  // Center: coefficient vectors x with sum_i x_i [b_i, b_j] = 0 for all j.
  {
    size_t n = l.dim();
    Mat sys(n * n, n);
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i) sys(j * n + k, i) = l.structure_constant(k, i, j);
    r.center_dim = nullspace(std::move(sys)).size();
  }
  Mat kf = l.killing_form();
  r.killing_rank = rank(kf);
  std::vector<Mat> rad = killing_radical_basis(l);
  r.killing_radical_dim = rad.size();
  r.quotient_dim = r.dim - r.killing_radical_dim;
  r.killing_radical_is_ideal =
      detail::contained_in_span(detail::bracket_span(l.basis(), rad), rad);
  r.killing_radical_lower_central_dims = lower_central_dims_of(rad);
  // Quotient algebra: extend the radical basis to a full basis by greedily
  // adding original basis elements; brackets of the complement, projected
  // onto complement coordinates, give the quotient structure constants.
  {
    std::vector<std::vector<Rational>> rows;
    for (const auto& m : rad) rows.push_back(vec49(m));
    std::vector<Mat> comp;
    for (const auto& b : l.basis()) {
      auto test = rows;
      test.push_back(vec49(b));
      if (span_rank(test) > span_rank(rows)) {
        rows.push_back(vec49(b));
        comp.push_back(b);
      }
    }
    size_t q = comp.size();
    // Combined solve target: [rad | comp] coordinates.
    std::vector<Mat> all = rad;
    all.insert(all.end(), comp.begin(), comp.end());
    Mat sys(49, all.size());
    for (size_t c = 0; c < all.size(); ++c) {
      auto v = vec49(all[c]);
      for (int rr = 0; rr < 49; ++rr) sys(rr, c) = v[rr];
    }
    std::vector<Rational> qsc(q * q * q, Rational(0));
    for (size_t i = 0; i < q; ++i)
      for (size_t j = 0; j < q; ++j) {
        auto x = solve(sys, vec49(bracket(comp[i], comp[j])));
        if (!x) throw structure_error("quotient bracket failed to resolve");
        for (size_t k = 0; k < q; ++k) qsc[(k * q + i) * q + j] = (*x)[rad.size() + k];
      }
    Mat qk(q, q);
    for (size_t i = 0; i < q; ++i)
      for (size_t j = 0; j < q; ++j) {
        Rational acc(0);
        for (size_t a = 0; a < q; ++a)
          for (size_t b = 0; b < q; ++b) {
            const Rational& c1 = qsc[(a * q + i) * q + b];
            if (c1 == 0) continue;
            const Rational& c2 = qsc[(b * q + j) * q + a];
            if (c2 != 0) acc += c1 * c2;
          }
        qk(i, j) = acc;
      }
    r.quotient_killing_rank = rank(std::move(qk));
  }
  return r;
}

/// Salamon string of a nilpotent algebra, for the patterns that occur
/// here: abelian algebras and two-step algebras whose bracket induces a
/// bijection Lambda^2(L/D) -> D. Throws input_error when L is not
/// nilpotent and structure_error for an unrecognized nilpotent pattern.
inline std::string nilpotent_signature(const LieSubalgebra& l) {
  auto lc = lower_central_dims_of(l.basis());
  if (lc.empty() || lc.back() != 0) throw input_error("algebra is not nilpotent");
  size_t n = l.dim();
  auto zeros = [](size_t k) {
    std::string s;
    for (size_t i = 0; i < k; ++i) {
      if (!s.empty()) s += ",";
      s += "0";
    }
    return s;
  };
  std::vector<Mat> derived = detail::bracket_span(l.basis(), l.basis());
  if (derived.empty()) return "(" + zeros(n) + ")";
  if (lc.size() != 3)  // dims (n, d, 0): two-step
    throw structure_error("nilpotent pattern not recognized");
  size_t d = derived.size();
  size_t q = n - d;
  if (q * (q - 1) / 2 != d) throw structure_error("nilpotent pattern not recognized");
  // Complement basis v_1..v_q modulo the derived algebra.
  std::vector<std::vector<Rational>> rows;
  for (const auto& m : derived) rows.push_back(vec49(m));
  std::vector<Mat> comp;
  for (const auto& b : l.basis()) {
    auto test = rows;
    test.push_back(vec49(b));
    if (span_rank(test) > span_rank(rows)) {
      rows.push_back(vec49(b));
      comp.push_back(b);
    }
  }
  // The pairs [v_i, v_j], i<j, must span the derived algebra.
  std::vector<std::vector<Rational>> pair_rows;
  for (size_t i = 0; i < q; ++i)
    for (size_t j = i + 1; j < q; ++j) pair_rows.push_back(vec49(bracket(comp[i], comp[j])));
  if (span_rank(pair_rows) != d) throw structure_error("nilpotent pattern not recognized");
  std::string s = "(" + zeros(q);
  for (size_t i = 1; i <= q; ++i)
    for (size_t j = i + 1; j <= q; ++j) s += "," + std::to_string(i) + std::to_string(j);
  s += ")";
  return s;
}

}  // namespace ka
