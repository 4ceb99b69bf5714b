// Shared oracles for the test suite. These deliberately re-derive results
// through routes independent of the implementation under test.

#pragma once

#include "ka/quadratic_space.hpp"
#include "ka/rng.hpp"

namespace ka::testing {

/// Literal ordered-tuple form of the generalized product,
///   a tri_k b = (1/k!) sum h^{i1 j1} ... h^{ik jk}
///               (iota_{i1} ... iota_{ik} a) ^ (iota_{j1} ... iota_{jk} b),
/// with the chains applied rightmost-first. Exponential in k; fine for the
/// degrees the tests use.
inline Multivector naive_gen_product(const QuadraticSpace& q, const Multivector& a,
                                     const Multivector& b, int k) {
  if (k == 0) return wedge(a, b);
  std::vector<std::array<int, 7>> tuples;
  std::array<int, 7> cur{};
  std::function<void(int)> rec = [&](int depth) {
    if (depth == k) {
      tuples.push_back(cur);
      return;
    }
    for (int i = 0; i < 7; ++i) {
      cur[depth] = i;
      rec(depth + 1);
    }
  };
  rec(0);
  Rational kfact(1);
  for (int i = 2; i <= k; ++i) kfact *= i;
  Multivector total;
  auto chain = [&](const std::array<int, 7>& idx, const Multivector& m) {
    Multivector r = m;
    for (int d = k - 1; d >= 0; --d) r = interior_basis(idx[d], r);
    return r;
  };
  for (const auto& I : tuples) {
    Multivector ia = chain(I, a);
    if (ia.is_zero()) continue;
    for (const auto& J : tuples) {
      Rational h(1);
      for (int d = 0; d < k; ++d) {
        h *= q.inverse_metric()(I[d], J[d]);
        if (h == 0) break;
      }
      if (h == 0) continue;
      Multivector jb = chain(J, b);
      if (jb.is_zero()) continue;
      total += h * wedge(ia, jb);
    }
  }
  return (Rational(1) / kfact) * total;
}

/// Decomposability of a three-form by the contraction criterion:
/// iota_u iota_v alpha ^ alpha = 0 for all basis bivectors.
inline bool plueker_decomposable(const Multivector& alpha) {
  for (int u = 0; u < 7; ++u)
    for (int v = u + 1; v < 7; ++v)
      if (!wedge(interior_basis(u, interior_basis(v, alpha)), alpha).is_zero()) return false;
  return true;
}

inline std::array<int, 7> signs_of(const std::string& sig) {
  std::array<int, 7> s{};
  for (int i = 0; i < 7; ++i) s[i] = sig[i] == '+' ? 1 : -1;
  return s;
}

}  // namespace ka::testing
