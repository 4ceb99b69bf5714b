#include "ka/square_classifier.hpp"
#include "ka/spinor_module.hpp"
#include "ka/rng.hpp"
#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ka;
using ka::testing::plueker_decomposable;
using ka::testing::signs_of;

namespace {
const char* kCanonicalPhi = "-e127 - e135 + e146 + e236 + e245 - e347 + e567";
}

TEST_CASE("the pseudo-unit candidate is a non-isotropic square") {
  // alpha = 1/8 + phi/8 in the frame where kappa = +1, i.e. l = -1.
  QuadraticSpace q = QuadraticSpace::from_signature("++++---");
  int l = -1;
  Multivector phi = parse_multivector(kCanonicalPhi);
  Multivector alpha = Rational(1, 8) * (Multivector(1) + phi);
  SquareVerdict v = check_square_conditions(q, l, alpha);
  CHECK(v.is_square);
  CHECK(v.kind == SquareKind::non_isotropic);
  CHECK(v.c == Rational(1, 8));
  // oracle: an explicitly solved spinor whose square is exactly alpha
  PairedSpinorModule mod(signs_of("++++---"), l);
  Spinor eps{0, Rational(1, 2), Rational(1, 2), 0, Rational(1, 2), 0, 0, Rational(-1, 2)};
  CHECK(mod.pair(eps, eps) == -1);
  CHECK(mod.square(eps, -1) == alpha);
}

TEST_CASE("the isotropic basis square with its conjugate witness") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  Multivector alpha = parse_multivector("e123");
  Multivector beta = parse_multivector("e456");
  for (int l : {+1, -1}) {
    SquareVerdict v = check_square_conditions(nul, l, alpha, beta);
    CHECK(v.is_square);
    CHECK(v.kind == SquareKind::isotropic);
    CHECK(v.c == 0);
    REQUIRE(v.triple.has_value());
    CHECK(wedge((*v.triple)[0], wedge((*v.triple)[1], (*v.triple)[2])) == alpha);
  }
}

TEST_CASE("a one-form is not a square") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  SquareVerdict v = check_square_conditions(nul, +1, parse_multivector("e1"));
  CHECK_FALSE(v.is_square);
  CHECK(v.kind == SquareKind::not_a_square);
}

TEST_CASE("rejected witnesses raise a distinct error") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  // <e123, e123> = 0, so the scalar part of the product with itself vanishes
  CHECK_THROWS_AS(check_square_conditions(nul, +1, parse_multivector("e123"),
                                          parse_multivector("e123")),
                  witness_rejected_error);
}

TEST_CASE("zero is the square of the zero spinor") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  SquareVerdict v = check_square_conditions(nul, +1, Multivector());
  CHECK(v.is_square);
  CHECK(v.kind == SquareKind::isotropic);
  CHECK_FALSE(v.triple.has_value());
}

TEST_CASE("non-degenerate characterization") {
  QuadraticSpace q = QuadraticSpace::from_signature("++++---");
  Multivector phi = parse_multivector(kCanonicalPhi);
  // matching pairs: (l=+1, c=-1), (l=-1, c=+1)
  CHECK(check_nondegenerate(q, +1, Rational(-1), phi));
  CHECK(check_nondegenerate(q, -1, Rational(1), phi));
  CHECK_FALSE(check_nondegenerate(q, +1, Rational(1), phi));
  // degenerate zero case on a totally isotropic decomposable
  QuadraticSpace nul = QuadraticSpace::null_basis();
  Multivector iso = parse_multivector("e123");
  CHECK(gen_product(nul, iso, iso, 1).is_zero());
  CHECK(check_nondegenerate(nul, +1, Rational(0), iso));
  CHECK_FALSE(check_nondegenerate(q, +1, Rational(1), Multivector()));
}

TEST_CASE("isotropic factorization of the basis example") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  auto t = isotropic_factorize(nul, parse_multivector("e123"));
  REQUIRE(t.has_value());
  CHECK((*t)[0] == parse_multivector("e1"));
  CHECK((*t)[1] == parse_multivector("e2"));
  CHECK((*t)[2] == parse_multivector("e3"));
}

TEST_CASE("factorization rejects non-isotropic and indecomposable forms") {
  QuadraticSpace orth = QuadraticSpace::from_signature("++++---");
  CHECK_FALSE(isotropic_factorize(orth, parse_multivector(kCanonicalPhi)).has_value());
  QuadraticSpace nul = QuadraticSpace::null_basis();
  Multivector ind = parse_multivector("e123 + e145");
  CHECK_FALSE(plueker_decomposable(ind));
  CHECK_FALSE(isotropic_factorize(nul, ind).has_value());
  // decomposable but not isotropic: support contains a conjugate pair
  Multivector dec = parse_multivector("e124");
  CHECK(plueker_decomposable(dec));
  CHECK_FALSE(isotropic_factorize(nul, dec).has_value());
  // wrong degree or zero
  CHECK_FALSE(isotropic_factorize(nul, parse_multivector("e12")).has_value());
  CHECK_FALSE(isotropic_factorize(nul, Multivector()).has_value());
}

TEST_CASE("factorization round trip on scaled and mixed triples") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  Rng rng(501);
  for (int t = 0; t < 20; ++t) {
    // random isotropic triple inside span{e1,e2,e3}
    Mat m(3, 3);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = random_rational(rng, 3, 2);
    } while (det(m) == 0);
    std::array<Multivector, 3> th;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (m(i, j) != 0) th[i] += Multivector::covector(j + 1, m(i, j));
    Multivector alpha = wedge(th[0], wedge(th[1], th[2]));
    auto f = isotropic_factorize(nul, alpha);
    REQUIRE(f.has_value());
    CHECK(wedge((*f)[0], wedge((*f)[1], (*f)[2])) == alpha);
    for (const auto& one : *f) {
      Vec7 v{};
      for (const auto& [mm, c] : one.terms()) v[std::countr_zero(unsigned(mm))] = c;
      CHECK(nul.pair_covectors(v, v) == 0);
    }
  }
}

TEST_CASE("soundness: spinor squares accepted, violators rejected") {
  Rng rng(502);
  PairedSpinorModule mod(signs_of("++++---"), +1);
  for (int t = 0; t < 50; ++t) {
    Spinor eps;
    for (auto& x : eps) x = random_rational(rng, 4, 2);
    CHECK(check_square_conditions(mod.space(), +1, mod.square(eps, +1)).is_square);
  }
  // random degree-{0,3} elements violating the quadratic characterization
  int rejected = 0, total = 0;
  while (total < 50) {
    Rational c = random_rational(rng, 3, 2);
    Multivector phi = random_multivector(rng, {3}, 4);
    if (check_nondegenerate(mod.space(), +1, c, phi)) continue;
    ++total;
    if (!check_square_conditions(mod.space(), +1, Multivector(c) + phi).is_square) ++rejected;
  }
  CHECK(rejected == 50);
}

TEST_CASE("a basis witness exists whenever the sweep passes on a nonzero form") {
  Rng rng(503);
  PairedSpinorModule mod(signs_of("++++---"), -1);
  for (int t = 0; t < 20; ++t) {
    Spinor eps;
    for (auto& x : eps) x = random_rational(rng, 4, 2);
    Multivector sq = mod.square(eps, +1);
    SquareVerdict v = check_square_conditions(mod.space(), -1, sq);
    if (!sq.is_zero()) {
      CHECK(v.is_square);
      CHECK(v.witness_beta.has_value());
    }
  }
}

TEST_CASE("perturbations of the isotropic square fail the normalized identity") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  Multivector alpha = parse_multivector("e123");
  Multivector beta = parse_multivector("e456");
  Rng rng(504);
  std::uniform_int_distribution<int> bnum(-3, 3), bden(1, 2);
  int rejected = 0, total = 0;
  while (total < 200) {
    Rational b(bnum(rng), bden(rng));
    Multivector perp = random_multivector(rng, {3}, 3);
    perp -= Multivector::blade(alpha.terms().front().first,
                               perp.coeff(alpha.terms().front().first));
    if (b * b == 1 && perp.is_zero()) continue;
    ++total;
    Multivector cand = b * alpha + perp;
    Multivector ab = vee(nul, +1, cand, beta);
    bool accepted = ab.scalar_part() != 0 && vee(nul, +1, ab, cand) == Rational(-8) * cand;
    if (!accepted) ++rejected;
  }
  CHECK(rejected == 200);
  // the two unperturbed signs do satisfy it
  for (int b : {+1, -1}) {
    Multivector cand = Rational(b) * alpha;
    Multivector ab = vee(nul, +1, cand, beta);
    CHECK(vee(nul, +1, ab, cand) == Rational(-8) * cand);
  }
}

TEST_CASE("scaled isotropic squares are squares even though the normalized identity fails") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  Multivector cand = Rational(2) * parse_multivector("e123");
  SquareVerdict v = check_square_conditions(nul, +1, cand, parse_multivector("e456"));
  CHECK(v.is_square);  // the square of a real spinor of non-rational scale
  Multivector ab = vee(nul, +1, cand, parse_multivector("e456"));
  CHECK(vee(nul, +1, ab, cand) != Rational(-8) * cand);
}
