#include "ka/stabilizer.hpp"
#include "ka/g2_structures.hpp"
#include "ka/spinor_module.hpp"
#include "ka/rng.hpp"
#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ka;

TEST_CASE("infinitesimal action basics") {
  Rng rng(701);
  Multivector a = random_multivector(rng, {0, 1, 2, 3}, 3);
  CHECK(infinitesimal_action(Mat(7, 7), a).is_zero());
  // identity on vectors acts as minus the degree
  Mat id = Mat::identity(7);
  for (int k = 0; k <= 4; ++k) {
    Multivector blade = random_multivector(rng, {k}, 1);
    CHECK(infinitesimal_action(id, blade) == Rational(-k) * blade);
  }
}

TEST_CASE("infinitesimal action is a wedge derivation") {
  Rng rng(702);
  for (int t = 0; t < 20; ++t) {
    Mat m(7, 7);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) m(i, j) = random_rational(rng, 3, 2);
    Multivector a = random_multivector(rng, {1, 2}, 2);
    Multivector b = random_multivector(rng, {0, 2, 3}, 2);
    CHECK(infinitesimal_action(m, wedge(a, b)) ==
          wedge(infinitesimal_action(m, a), b) + wedge(a, infinitesimal_action(m, b)));
  }
}

TEST_CASE("stabilizer of zero is the full orthogonal algebra") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  CHECK(stabilizer_algebra(nul, Multivector()).dim() == 21);
}

TEST_CASE("stabilizer of the canonical three-form") {
  QuadraticSpace q = QuadraticSpace::from_signature("++++---");
  LieSubalgebra stab = stabilizer_algebra(q, canonical_phi());
  CHECK(stab.dim() == 14);
  LieStructureReport rep = lie_structure_report(stab);
  CHECK(rep.killing_rank == 14);
  CHECK(rep.killing_radical_dim == 0);
  CHECK(rep.center_dim == 0);
  // exactness of the defining equations
  for (const auto& m : stab.basis()) {
    CHECK((m.transpose() * q.metric() + q.metric() * m).is_zero());
    CHECK(infinitesimal_action(m, canonical_phi()).is_zero());
  }
}

TEST_CASE("stabilizer of the isotropic square") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  LieSubalgebra stab = stabilizer_algebra(nul, parse_multivector("e123"));
  CHECK(stab.dim() == 14);
  // Block shape {A in sl(3), B in so(3), v}: zero lower-left blocks, zero
  // (2,3) block, traceless upper-left, D = -A^T, last diagonal entry zero.
  for (const auto& m : stab.basis()) {
    Rational trace(0);
    for (int i = 0; i < 3; ++i) {
      trace += m(i, i);
      for (int j = 0; j < 3; ++j) {
        CHECK(m(3 + i, j) == 0);            // C = 0
        CHECK(m(3 + i, 3 + j) == -m(j, i)); // D = -A^T
      }
      CHECK(m(3 + i, 6) == 0);  // u = 0
      CHECK(m(6, i) == 0);      // x = -u = 0
      CHECK(m(6, 3 + i) == -m(i, 6));  // y = -v
    }
    CHECK(trace == 0);
    CHECK(m(6, 6) == 0);
  }
  LieStructureReport rep = lie_structure_report(stab);
  CHECK(rep.killing_radical_dim == 6);
  CHECK(rep.killing_radical_lower_central_dims == std::vector<size_t>{6, 3, 0});
  CHECK(rep.killing_radical_is_ideal);
  CHECK(rep.quotient_dim == 8);
  CHECK(rep.quotient_killing_rank == 8);
}

TEST_CASE("abelian control algebra") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  // diagonal matrices inside so(h) for the split form: diag(a,b,c,-a,-b,-c,0)
  std::vector<Mat> basis;
  for (int k = 0; k < 3; ++k) {
    Mat m(7, 7);
    m(k, k) = 1;
    m(3 + k, 3 + k) = -1;
    basis.push_back(m);
  }
  LieSubalgebra abelian(nul, basis);
  LieStructureReport rep = lie_structure_report(abelian);
  CHECK(rep.derived_series_dims == std::vector<size_t>{3, 0});
  CHECK(rep.lower_central_dims == std::vector<size_t>{3, 0});
  CHECK(rep.center_dim == 3);
  CHECK(nilpotent_signature(abelian) == "(0,0,0)");
}

TEST_CASE("salamon strings") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  LieSubalgebra stab = stabilizer_algebra(nul, parse_multivector("e123"));
  LieSubalgebra radical(nul, killing_radical_basis(stab));
  CHECK(nilpotent_signature(radical) == "(0,0,0,12,13,23)");
  // Heisenberg triple inside the same stabilizer: two translations and the
  // rotation their bracket produces.
  auto vgen = [&](int k) {
    Mat m(7, 7);
    m(k, 6) = 1;
    m(6, 3 + k) = -1;
    return m;
  };
  Mat n1 = vgen(0), n2 = vgen(1);
  Mat b12 = bracket(n1, n2);
  REQUIRE(!b12.is_zero());
  LieSubalgebra heis(nul, {n1, n2, b12});
  CHECK(nilpotent_signature(heis) == "(0,0,12)");
  // non-nilpotent input is rejected
  QuadraticSpace orth = QuadraticSpace::from_signature("++++---");
  LieSubalgebra g2 = stabilizer_algebra(orth, canonical_phi());
  CHECK_THROWS_AS(nilpotent_signature(g2), input_error);
}

TEST_CASE("bracket closure is enforced") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  // two elements whose bracket escapes their span
  auto vgen = [&](int k) {
    Mat m(7, 7);
    m(k, 6) = 1;
    m(6, 3 + k) = -1;
    return m;
  };
  CHECK_THROWS_AS(LieSubalgebra(nul, {vgen(0), vgen(1)}), structure_error);
  // an element outside so(h)
  Mat bad(7, 7);
  bad(0, 0) = 1;
  CHECK_THROWS_AS(LieSubalgebra(nul, {bad}), structure_error);
}

TEST_CASE("equivariance consistency between blade commutators and matrix stabilizers") {
  // For a degree-2 form w, the commutator derivation on covectors matches a
  // matrix M in so(h); the derivation kills a form exactly when M is in its
  // stabilizer.
  Rng rng(703);
  std::array<int, 7> signs = ka::testing::signs_of("++++---");
  PairedSpinorModule mod(signs, +1);
  const QuadraticSpace& q = mod.space();
  LieSubalgebra stab = stabilizer_algebra(q, canonical_phi());
  int in_stab = 0, out_stab = 0;
  for (int t = 0; t < 20; ++t) {
    Multivector om = random_multivector(rng, {2}, 3);
    Mat cov(7, 7);
    for (int i = 0; i < 7; ++i) {
      Multivector ci = geo_product(q, om, Multivector::covector(i + 1)) -
                       geo_product(q, Multivector::covector(i + 1), om);
      for (const auto& [m, c] : ci.terms()) cov(i, std::countr_zero(unsigned(m))) = c;
    }
    // vector-side matrix with covector action theta -> -theta o M
    Mat m(7, 7);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) m(i, j) = -cov(i, j);
    CHECK((m.transpose() * q.metric() + q.metric() * m).is_zero());
    bool kills = derivation_action(cov, canonical_phi()).is_zero();
    bool in_algebra = stab.coordinates(m).has_value();
    CHECK(kills == in_algebra);
    (kills ? in_stab : out_stab) += 1;
  }
  CHECK(out_stab > 0);  // the random forms were not all stabilizing
}
