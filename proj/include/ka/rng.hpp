/// @file rng.hpp
/// Deterministic random data for property checks. All call sites pass fixed
/// seeds, so every run of the suite sees the same values.

#pragma once

#include "ka/linalg.hpp"
#include "ka/multivector.hpp"
#include "ka/poly.hpp"

#include <random>

namespace ka {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_num = 9, int max_den = 4) {
  std::uniform_int_distribution<int> n(-max_num, max_num), d(1, max_den);
  return Rational(n(rng), d(rng));
}

inline Rational random_nonzero_rational(Rng& rng, int max_num = 9, int max_den = 4) {
  for (;;) {
    Rational r = random_rational(rng, max_num, max_den);
    if (r != 0) return r;
  }
}

/// Random multivector supported on the given degrees.
inline Multivector random_multivector(Rng& rng, std::initializer_list<int> degrees,
                                      int terms_per_degree = 4) {
  Multivector r;
  std::uniform_int_distribution<int> mask(0, kBlades - 1);
  for (int d : degrees) {
    for (int t = 0; t < terms_per_degree; ++t) {
      int m = mask(rng);
      if (blade_degree(static_cast<BladeMask>(m)) != d) {
        --t;
        continue;
      }
      r += Multivector::blade(static_cast<BladeMask>(m), random_rational(rng));
    }
  }
  return r;
}

inline Multivector random_truncated(Rng& rng, int terms_per_degree = 3) {
  return random_multivector(rng, {0, 1, 2, 3}, terms_per_degree);
}

inline Vec7 random_vector(Rng& rng, int max_num = 5, int max_den = 3) {
  Vec7 v{};
  for (auto& x : v) x = random_rational(rng, max_num, max_den);
  return v;
}

/// Random symmetric invertible rational metric (dense, small entries).
inline Mat random_symmetric_invertible(Rng& rng, int max_entry = 3) {
  std::uniform_int_distribution<int> e(-max_entry, max_entry);
  for (;;) {
    Mat m(7, 7);
    for (size_t i = 0; i < 7; ++i) {
      for (size_t j = i; j < 7; ++j) {
        m(i, j) = e(rng);
        m(j, i) = m(i, j);
      }
    }
    if (det(m) != 0) return m;
  }
}

/// Random symmetric invertible metric of signature (4,3) with det = -1:
/// A^T D A for unimodular A built from a few integer shears. The unit
/// determinant keeps the scaled multiplication table integral and sparse
/// enough for the int64 sweep.
inline Mat random_unimodular_signature43(Rng& rng, int shears = 4) {
  std::uniform_int_distribution<int> idx(0, 6), off(-2, 2);
  Mat a = Mat::identity(7);
  for (int s = 0; s < shears; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) {
      --s;
      continue;
    }
    int c = off(rng);
    if (c == 0) c = 1;
    Mat sh = Mat::identity(7);
    sh(i, j) = c;
    a = a * sh;
  }
  Mat d(7, 7);
  for (int i = 0; i < 7; ++i) d(i, i) = i < 4 ? 1 : -1;
  return a.transpose() * d * a;
}

inline Poly7 random_poly(Rng& rng, int max_terms = 3, int max_deg = 2, int max_coeff = 4) {
  std::uniform_int_distribution<int> nt(1, max_terms), var(0, kNumVars - 1), dg(0, max_deg);
  Poly7 p;
  int n = nt(rng);
  for (int t = 0; t < n; ++t) {
    Exp7 e{};
    int total = dg(rng);
    for (int k = 0; k < total; ++k) ++e[var(rng)];
    Rational c = random_rational(rng, max_coeff, 2);
    p += Poly7::monomial(e, c);
  }
  return p;
}

inline Poly7 random_nonzero_poly(Rng& rng, int max_terms = 3, int max_deg = 2,
                                 int max_coeff = 4) {
  for (;;) {
    Poly7 p = random_poly(rng, max_terms, max_deg, max_coeff);
    if (!p.is_zero()) return p;
  }
}

}  // namespace ka
