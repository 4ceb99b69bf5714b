#include "ka/master_system.hpp"
#include "ka/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ka;

namespace {
G2StarStructure fixture(int l) {
  QuadraticSpace q = QuadraticSpace::from_signature("++++---");
  auto s = check_g2star(q, l, canonical_phi());
  REQUIRE(s.has_value());
  return *s;
}
}  // namespace

TEST_CASE("master right-hand side on trivial data") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  Multivector alpha = parse_multivector("2 + e123");
  CHECK(master_rhs(nul, +1, Multivector(), alpha).is_zero());
  // scalar coefficient doubles the form
  Multivector t = Multivector(Rational(3, 2));
  CHECK(master_rhs(nul, +1, t, alpha) == Rational(3) * alpha);
  CHECK_THROWS_AS(master_rhs(nul, +1, parse_multivector("e1234"), alpha), input_error);
}

TEST_CASE("degree-zero rate matches the scalar equation") {
  Rng rng(801);
  QuadraticSpace q = QuadraticSpace::from_signature("++++---");
  for (int t = 0; t < 20; ++t) {
    Multivector a_v = random_truncated(rng);
    Rational f = random_rational(rng);
    Multivector phi = random_multivector(rng, {3}, 4);
    Multivector m = master_rhs(q, +1, a_v, Multivector(f) + phi);
    CHECK(m.scalar_part() ==
          Rational(2) * f * a_v.scalar_part() - Rational(2) * inner(q, a_v.grade(3), phi));
  }
}

TEST_CASE("master equals expanded split by degrees") {
  Rng rng(802);
  for (int l : {+1, -1}) {
    QuadraticSpace q = QuadraticSpace::from_signature("++++---");
    QuadraticSpace nul = QuadraticSpace::null_basis();
    for (const auto& sp : {q, nul})
      for (int t = 0; t < 25; ++t) {
        Multivector a_v = random_truncated(rng);
        Rational f = random_rational(rng);
        Multivector phi = random_multivector(rng, {3}, 4);
        Multivector m = master_rhs(sp, l, a_v, Multivector(f) + phi);
        ExpandedRates e = expanded_rhs(sp, l, a_v, f, phi);
        CHECK(m.scalar_part() == e.scalar_rate);
        CHECK(m.grade(3) == e.three_rate);
        CHECK(m.grade(1).is_zero());
        CHECK(m.grade(2).is_zero());
      }
  }
}

TEST_CASE("expanded rates on pure inputs") {
  QuadraticSpace q = QuadraticSpace::from_signature("++++---");
  Multivector phi = canonical_phi();
  ExpandedRates zero = expanded_rhs(q, +1, Multivector(), Rational(2), phi);
  CHECK(zero.scalar_rate == 0);
  CHECK(zero.three_rate.is_zero());
  Rng rng(803);
  for (int t = 0; t < 10; ++t) {
    Multivector a1 = random_multivector(rng, {1}, 4);
    ExpandedRates e = expanded_rhs(q, +1, a1, Rational(1), phi);
    CHECK(e.scalar_rate == 0);
    CHECK(e.three_rate == Rational(2) * hodge(q, wedge(a1, phi)));
  }
}

TEST_CASE("decomposition of a connection coefficient") {
  for (int l : {+1, -1}) {
    G2StarStructure s = fixture(l);
    // pure 7-part two-form: sigma1 recovers the generating one-form
    Rng rng(804);
    for (int t = 0; t < 10; ++t) {
      Vec7 v = random_vector(rng);
      Multivector ivphi;
      for (int i = 0; i < 7; ++i)
        if (v[i] != 0) ivphi += v[i] * interior_basis(i, s.phi());
      ADecomposition d = decompose_a(s, ivphi);
      CHECK(d.sigma1 == flat(s.space(), v));
      CHECK(d.sigma14.is_zero());
    }
    // pure phi three-form: kappa0 = 1
    ADecomposition d = decompose_a(s, s.phi());
    CHECK(d.kappa0 == 1);
    CHECK(d.kappa1.is_zero());
    CHECK(d.kappa27.is_zero());
    // random reconstruction
    for (int t = 0; t < 15; ++t) {
      Multivector a_v = random_truncated(rng);
      CHECK(recompose_a(s, decompose_a(s, a_v)) == a_v);
    }
  }
}

TEST_CASE("reduced system against the expanded oracle") {
  Rng rng(805);
  for (int l : {+1, -1}) {
    G2StarStructure s = fixture(l);
    const QuadraticSpace& q = s.space();
    for (int t = 0; t < 20; ++t) {
      Multivector a_raw = random_truncated(rng);
      ADecomposition d = decompose_a(s, a_raw);
      Multivector a_v = a_raw - d.kappa27;
      ReducedRates r = reduced_rhs(s, a_v, s.c());
      CHECK(r.obstruction.is_zero());
      ExpandedRates e = expanded_rhs(q, l, a_v, s.c(), s.phi());
      CHECK(r.three_rate == e.three_rate);
      CHECK(r.scalar_rate == e.scalar_rate);
      // obstruction is reported exactly
      if (!d.kappa27.is_zero()) {
        ReducedRates ro = reduced_rhs(s, a_raw, s.c());
        CHECK(ro.obstruction == d.kappa27);
        CHECK_FALSE(ro.obstruction.is_zero());
      }
    }
    CHECK(reduced_rhs(s, Multivector(), s.c()).three_rate.is_zero());
    CHECK_THROWS_AS(reduced_rhs(s, Multivector(), s.c() + 1), input_error);
  }
}

TEST_CASE("scalar equation is the trace of the three-form equation") {
  // with f^2 = -<phi,phi>/7 imposed: 2 f scalar_rate = 2 <three_rate, phi> / (-7)
  Rng rng(806);
  for (int l : {+1, -1}) {
    G2StarStructure s = fixture(l);
    const QuadraticSpace& q = s.space();
    for (int t = 0; t < 20; ++t) {
      Multivector a_v = random_truncated(rng);
      ExpandedRates e = expanded_rhs(q, l, a_v, s.c(), s.phi());
      CHECK(Rational(2) * s.c() * e.scalar_rate ==
            Rational(2) * inner(q, e.three_rate, s.phi()) / Rational(-7));
    }
  }
}

TEST_CASE("isotropic expansion equals the expanded system at f = 0") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  std::array<Multivector, 3> triple = {parse_multivector("e1"), parse_multivector("e2"),
                                       parse_multivector("e3")};
  Multivector phi = parse_multivector("e123");
  Rng rng(807);
  for (int t = 0; t < 50; ++t) {
    int l = (t % 2) ? -1 : 1;
    Multivector a_v = random_truncated(rng);
    IsotropicRates ir = isotropic_rhs(nul, l, a_v, triple);
    ExpandedRates e = expanded_rhs(nul, l, a_v, Rational(0), phi);
    CHECK(ir.three_rate == e.three_rate);
    CHECK(ir.scalar_constraint == inner(nul, a_v.grade(3), phi));
  }
  CHECK(isotropic_rhs(nul, +1, Multivector(), triple).three_rate.is_zero());
}

TEST_CASE("single contractions of a decomposable split as claimed") {
  // a2 tri1 (th^te^et) = (a2 tri1 th)^te^et - (a2 tri1 te)^th^et + (a2 tri1 et)^th^te
  QuadraticSpace nul = QuadraticSpace::null_basis();
  Multivector th = parse_multivector("e1"), te = parse_multivector("e2"),
              et = parse_multivector("e3");
  Rng rng(808);
  for (int t = 0; t < 20; ++t) {
    Multivector a2 = random_multivector(rng, {2}, 5);
    Multivector lhs = gen_product(nul, a2, wedge(th, wedge(te, et)), 1);
    Multivector rhs = wedge(gen_product(nul, a2, th, 1), wedge(te, et)) -
                      wedge(gen_product(nul, a2, te, 1), wedge(th, et)) +
                      wedge(gen_product(nul, a2, et, 1), wedge(th, te));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("torsion specialization of the isotropic system") {
  // with a0 = a1 = a3 = 0 only the two-form terms remain
  QuadraticSpace nul = QuadraticSpace::null_basis();
  std::array<Multivector, 3> triple = {parse_multivector("e1"), parse_multivector("e2"),
                                       parse_multivector("e3")};
  Rng rng(809);
  for (int t = 0; t < 20; ++t) {
    Multivector a2 = random_multivector(rng, {2}, 5);
    IsotropicRates ir = isotropic_rhs(nul, +1, a2, triple);
    Multivector expect =
        Rational(-2) * (wedge(gen_product(nul, a2, triple[0], 1), wedge(triple[1], triple[2])) -
                        wedge(gen_product(nul, a2, triple[1], 1), wedge(triple[0], triple[2])) +
                        wedge(gen_product(nul, a2, triple[2], 1), wedge(triple[0], triple[1])));
    CHECK(ir.three_rate == expect);
    CHECK(ir.scalar_constraint == 0);
  }
}

TEST_CASE("isotropic expansion validates its triple") {
  QuadraticSpace nul = QuadraticSpace::null_basis();
  // e1 and e4 pair to 1: not an isotropic orthogonal triple
  std::array<Multivector, 3> bad = {parse_multivector("e1"), parse_multivector("e4"),
                                    parse_multivector("e3")};
  CHECK_THROWS_AS(isotropic_rhs(nul, +1, Multivector(1), bad), input_error);
}
