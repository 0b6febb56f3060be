#include <doctest.h>

#include <cmath>

#include "blaschke2d/blaschke.hpp"
#include "support.hpp"

using namespace blaschke2d;
using testsupport::G;
using testsupport::Gi;
using testsupport::Q;

TEST_SUITE("blaschke_core") {

TEST_CASE("construction validates zeros, factors, and determinant") {
    CHECK_THROWS_AS(build_map({G(3, 2)}, {G(1, 3)}, {G(0)}, {G(2, 5)}, G(1), G(1)),
                    ZeroOutsideDisc);
    // |i| = 1 sits on the boundary, not inside.
    CHECK_THROWS_AS(build_map({Gi(0, 1, 1, 1)}, {G(1, 3)}, {G(0)}, {G(2, 5)}, G(1), G(1)),
                    ZeroOutsideDisc);
    CHECK_THROWS_AS(build_map({G(1, 2)}, {G(1, 3)}, {G(1, 5)}, {}, G(1), G(1)), EmptyFactor);
    // N = [[1,1],[1,1]] has determinant zero.
    CHECK_THROWS_AS(build_map({G(1, 2)}, {G(1, 3)}, {G(1, 5)}, {G(1, 7)}, G(1), G(1)),
                    DegenerateDeterminant);
    CHECK_THROWS_AS(build_map({G(1, 2)}, {G(1, 3)}, {G(1, 5)}, {G(1, 7), G(0)}, G(0), G(1)),
                    ValidationError);  // zero rotation seed
    CHECK_THROWS_AS((DegreeMatrix{2, 1, 4, 2}.validate()), DegenerateDeterminant);
}

TEST_CASE("rotations are exactly unimodular for any nonzero seed") {
    for (const GaussianRational& seed :
         {G(1), Gi(3, 1, 4, 1), Gi(1, 2, -1, 3), Gi(0, 1, 5, 7), Gi(-2, 5, 0, 1)}) {
        UnimodularRotation rot(seed);
        CAPTURE(to_string(seed));
        CHECK(rot.value() * rot.value().conj() == G(1));
        CHECK(rot.seed() == seed);
    }
    CHECK(UnimodularRotation(Gi(3, 1, 4, 1)).value() == Gi(-7, 25, 24, 25));
    CHECK(UnimodularRotation::identity().value() == G(1));
}

TEST_CASE("lift cancels the exact common factor of a degenerate family") {
    Blaschke2D f = testsupport::shared_zero_52_plain();
    CHECK(f.N() == DegreeMatrix{5, 2, 2, 1});

    LiftInfo info;
    HomogeneousMap H = lift(f, kDefaultTermBudget, &info);
    CHECK(info.raw_degree == 10);
    CHECK(H.degree == 8);
    // gcd = (T - 1/4 Z)(T - 1/3 W) up to leading normalization.
    TriPoly expect = poly_mul(TriPoly::linear(G(-1, 4), G(0), G(1)),
                              TriPoly::linear(G(0), G(-1, 3), G(1)));
    CHECK(info.gcd == normalize_leading(expect));

    // Nothing in common is left after reduction.
    CHECK(poly_gcd(poly_gcd(H.F1, H.F2), H.F3).is_constant());
    for (int i = 0; i < 3; ++i) CHECK(H.component(i).degree() == 8);
}

TEST_CASE("generic lift has nothing to cancel") {
    LiftInfo info;
    HomogeneousMap H = lift(testsupport::generic_12(), kDefaultTermBudget, &info);
    CHECK(info.raw_degree == 5);
    CHECK(H.degree == 5);
    CHECK(info.gcd.is_constant());
}

TEST_CASE("monomial lift reduces to bare monomials") {
    HomogeneousMap M = lift(monomial_map(DegreeMatrix{1, 1, 1, 2}));
    CHECK(M.degree == 3);
    CHECK(M.F1 == TriPoly::term(G(1), 1, 1, 1));
    CHECK(M.F2 == TriPoly::term(G(1), 1, 2, 0));
    CHECK(M.F3 == TriPoly::term(G(1), 0, 0, 3));
}

TEST_CASE("affine evaluation: finite, pole, and indeterminate points") {
    Blaschke2D mono = monomial_map(DegreeMatrix{1, 1, 1, 2});
    EvalResult r = eval_affine(mono, {0.5, 0.0}, {0.5, 0.0});
    REQUIRE(r.kind == EvalResult::Kind::Finite);
    CHECK(std::abs(r.z - std::complex<double>(0.25, 0.0)) < 1e-12);
    CHECK(std::abs(r.w - std::complex<double>(0.125, 0.0)) < 1e-12);

    Blaschke2D f = testsupport::shared_zero_52_plain();
    // z = 4 is on a pole line of the raw product, but the cancelled factor
    // keeps the first reduced component nonzero there: a genuine pole.
    CHECK(eval_affine(f, {4.0, 0.0}, {0.25, 0.0}).kind == EvalResult::Kind::Infinity);
    // (1/4, 3) is a zero line of one component crossing a pole line of the other.
    CHECK(eval_affine(f, {0.25, 0.0}, {3.0, 0.0}).kind == EvalResult::Kind::Indeterminate);

    // Away from poles the kernel agrees with the exact factor product.
    GaussianRational z0 = G(1, 5), w0 = G(1, 7);
    GaussianRational exact1 = f.theta1() * f.A().eval(z0) * f.B().eval(w0);
    GaussianRational exact2 = f.theta2() * f.C().eval(z0) * f.D().eval(w0);
    EvalResult rf = eval_affine(f, z0.to_complex(), w0.to_complex());
    REQUIRE(rf.kind == EvalResult::Kind::Finite);
    CHECK(std::abs(rf.z - exact1.to_complex()) < 1e-12);
    CHECK(std::abs(rf.w - exact2.to_complex()) < 1e-12);
}

TEST_CASE("one-variable factors evaluate exactly and reject poles") {
    Blaschke2D f = testsupport::generic_12();
    // A(z) = (z - 1/2)/(1 - z/2); A(1) = 1, A(0) = -1/2.
    CHECK(f.A().eval(G(1)) == G(1));
    CHECK(f.A().eval(G(0)) == G(-1, 2));
    CHECK_THROWS_AS(f.A().eval(G(2)), DegenerateConfiguration);
    CHECK(f.A().numerator() == UniPoly::from_roots({G(1, 2)}));
    CHECK(f.A().denominator().eval(G(2)).is_zero());
}

TEST_CASE("conjugated map intertwines with complex conjugation") {
    Blaschke2D f =
        build_map({Gi(1, 4, -2, 7)}, {G(1, 3)}, {G(0)}, {G(2, 5), G(-1, 6)},
                  Gi(3, 1, 4, 1), G(1));
    Blaschke2D fc = conjugated(f);
    std::complex<double> z{0.1, 0.2}, w{0.3, -0.1};
    EvalResult e1 = eval_affine(f, z, w);
    EvalResult e2 = eval_affine(fc, std::conj(z), std::conj(w));
    REQUIRE(e1.kind == EvalResult::Kind::Finite);
    REQUIRE(e2.kind == EvalResult::Kind::Finite);
    CHECK(std::abs(std::conj(e1.z) - e2.z) < 1e-12);
    CHECK(std::abs(std::conj(e1.w) - e2.w) < 1e-12);
}

TEST_CASE("serialization round-trips bit-exactly") {
    Blaschke2D fancy =
        build_map({Gi(1, 4, -2, 7)}, {G(1, 3)}, {G(0)}, {G(2, 5), G(-1, 6)},
                  Gi(3, 1, 4, 1), G(1));
    std::string s1 = serialize_map(fancy);
    Blaschke2D back = parse_map(s1);
    CHECK(serialize_map(back) == s1);
    CHECK(back.theta1() == fancy.theta1());
    CHECK(back.theta2() == fancy.theta2());
    CHECK(back.sigma() == fancy.sigma());

    CHECK(rational_fields(Gi(1, 4, -2, 7)) == "1 4 -2 7");
    CHECK(parse_rational_fields("1", "4", "-2", "7") == Gi(1, 4, -2, 7));
    CHECK_THROWS_AS(parse_rational_fields("1", "0", "0", "1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational_fields("x", "1", "0", "1"), std::invalid_argument);
}

TEST_CASE("parser reports the offending line") {
    try {
        parse_map("a 1 2 0 1\nx 1 1 0 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    try {
        parse_map("a 1 2 0\n");  // short line
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
}

TEST_CASE("sigma and the all-zero predicate") {
    Blaschke2D f = testsupport::generic_12();
    CHECK(f.sigma().size() == 5);
    CHECK(!f.all_zeros_zero());
    CHECK(monomial_map(DegreeMatrix{2, 1, 1, 1}).all_zeros_zero());
    CHECK(monomial_map(DegreeMatrix{2, 1, 1, 1}).N() == DegreeMatrix{2, 1, 1, 1});
}

}  // TEST_SUITE
