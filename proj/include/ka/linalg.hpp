/// @file linalg.hpp
/// Dense exact linear algebra over the rationals: elimination, rank,
/// nullspace, determinants, inverses and LU-style solving. Everything is
/// fraction-exact; nothing here is numeric.

#pragma once

#include "ka/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace ka {

class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c, Rational(0)) {}

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rational& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator+(const Mat& o) const {
    Mat r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
  }
  Mat operator-(const Mat& o) const {
    Mat r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
  }
  Mat operator*(const Rational& s) const {
    Mat r = *this;
    for (auto& x : r.a_) x *= s;
    return r;
  }
  Mat operator*(const Mat& o) const {
    Mat r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const Rational& aik = (*this)(i, k);
        if (aik == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) {
          const Rational& b = o(k, j);
          if (b != 0) r(i, j) += aik * b;
        }
      }
    return r;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  std::vector<Rational> row(size_t i) const {
    return std::vector<Rational>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }

 private:
  size_t rows_, cols_;
  std::vector<Rational> a_;
};

inline std::vector<Rational> mat_vec(const Mat& m, const std::vector<Rational>& v) {
  std::vector<Rational> r(m.rows(), Rational(0));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && v[j] != 0) r[i] += m(i, j) * v[j];
  return r;
}

/// In-place reduced row echelon form. Returns the pivot columns.
/// Pivoting is first-nonzero (lexicographic), so results are deterministic.
inline std::vector<size_t> rref(Mat& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = Rational(1) / m(r, c);
    for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline size_t rank(Mat m) { return rref(m).size(); }

/// Basis of the right nullspace {x : m x = 0}, echelonized, deterministic.
inline std::vector<std::vector<Rational>> nullspace(Mat m) {
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rational det(Mat m) {
  if (m.rows() != m.cols()) throw internal_error("det: non-square matrix");
  Rational d(1);
  size_t n = m.rows();
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    Rational inv = Rational(1) / m(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) * inv;
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

inline std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw internal_error("inverse: non-square matrix");
  size_t n = m.rows();
  Mat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<size_t> pivots = rref(aug);
  if (pivots.size() != n) return std::nullopt;
  Mat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Solves m x = b; nullopt when inconsistent. When the system is
/// underdetermined, free variables are set to zero.
inline std::optional<std::vector<Rational>> solve(Mat m, std::vector<Rational> b) {
  size_t n = m.cols();
  Mat aug(m.rows(), n + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  std::vector<size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, n);
  return x;
}

/// Reusable exact factorization of a square system (RREF of [A | I]).
/// Solving for many right-hand sides then costs one matrix-vector product.
class SolvedSystem {
 public:
  explicit SolvedSystem(const Mat& a) {
    auto inv = inverse(a);
    if (!inv) throw structure_error("SolvedSystem: singular matrix");
    inv_ = std::move(*inv);
  }
  std::vector<Rational> solve(const std::vector<Rational>& b) const { return mat_vec(inv_, b); }

 private:
  Mat inv_;
};

/// Exact signature (n_plus, n_minus) of a symmetric invertible matrix,
/// computed by congruence reduction (Sylvester's law of inertia).
inline std::pair<int, int> signature(Mat m) {
  if (m.rows() != m.cols()) throw internal_error("signature: non-square matrix");
  size_t n = m.rows();
  int plus = 0, minus = 0;
  // Congruence elimination: at each step find a nonzero diagonal pivot,
  // possibly after a row+column move that creates one.
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m(p, p) == 0) ++p;
    if (p == n) {
      // All remaining diagonal entries vanish; find an off-diagonal entry
      // and fold it onto the diagonal: rows/cols i += j.
      size_t i = c, j = c;
      bool found = false;
      for (size_t a = c; a < n && !found; ++a)
        for (size_t b = a + 1; b < n && !found; ++b)
          if (m(a, b) != 0) {
            i = a;
            j = b;
            found = true;
          }
      if (!found) throw structure_error("signature: matrix is singular");
      for (size_t k = 0; k < n; ++k) m(i, k) += m(j, k);
      for (size_t k = 0; k < n; ++k) m(k, i) += m(k, j);
      p = i;
    }
    if (p != c) {
      for (size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      for (size_t k = 0; k < n; ++k) std::swap(m(k, p), m(k, c));
    }
    if (m(c, c) > 0)
      ++plus;
    else
      ++minus;
    Rational inv = Rational(1) / m(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) * inv;
      for (size_t k = 0; k < n; ++k) m(i, k) -= f * m(c, k);
      for (size_t k = 0; k < n; ++k) m(k, i) -= f * m(k, c);
    }
  }
  return {plus, minus};
}

/// Rank of the span of a family of equally-sized vectors.
inline size_t span_rank(const std::vector<std::vector<Rational>>& vecs) {
  if (vecs.empty()) return 0;
  Mat m(vecs.size(), vecs[0].size());
  for (size_t i = 0; i < vecs.size(); ++i)
    for (size_t j = 0; j < vecs[i].size(); ++j) m(i, j) = vecs[i][j];
  return rank(std::move(m));
}

}  // namespace ka
