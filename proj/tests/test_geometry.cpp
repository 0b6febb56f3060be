#include <doctest.h>

#include <algorithm>

#include "blaschke2d/geometry.hpp"
#include "support.hpp"

using namespace blaschke2d;
using testsupport::G;
using testsupport::Gi;

TEST_SUITE("geometry") {

TEST_CASE("line arrangement: one line per zero/pole plus infinity") {
    Blaschke2D f = testsupport::generic_12();
    auto lines = line_arrangement(f);
    REQUIRE(lines.size() == 2 * (1 + 1 + 1 + 2) + 1);
    CHECK(lines.back().kind == LineKind::Infinity);

    // The pole line of a = 1/2 is cut out by T - Z/2.
    bool found = false;
    for (const auto& ln : lines)
        if (ln.kind == LineKind::PoleOfA) {
            CHECK(ln.defining == TriPoly::linear(G(-1, 2), G(0), G(1)));
            CHECK(ln.parameter == G(1, 2));
            CHECK(!ln.degenerate);
            found = true;
        }
    CHECK(found);

    // Zeros at the origin collapse their lines; the flag records it.
    auto mono_lines = line_arrangement(monomial_map(DegreeMatrix{1, 1, 1, 2}));
    for (const auto& ln : mono_lines)
        CHECK(ln.degenerate == (ln.kind != LineKind::Infinity));
}

TEST_CASE("generic indeterminacy census is exact") {
    Blaschke2D f = testsupport::generic_12();
    IndetSet ind = indeterminacy_points(f);
    CHECK(ind.warning.empty());
    CHECK(ind.includes_infinite_pair);
    // 2(mn + pq) + (mq + np) with N = [[1,1],[1,2]].
    REQUIRE(ind.finite_points.size() == 9);
    CHECK(std::is_sorted(ind.finite_points.begin(), ind.finite_points.end()));

    // Zero line of A (z = 1/2) meets the pole line of B (w = 3).
    bool has = false;
    for (const auto& pt : ind.finite_points)
        if (pt.z == G(1, 2) && pt.w == G(3, 1)) has = true;
    CHECK(has);
    // Every point annihilates all three reduced lift components.
    HomogeneousMap H = lift(f);
    for (const auto& pt : ind.finite_points) {
        CHECK(poly_eval(H.F1, pt.z, pt.w, G(1)).is_zero());
        CHECK(poly_eval(H.F2, pt.z, pt.w, G(1)).is_zero());
        CHECK(poly_eval(H.F3, pt.z, pt.w, G(1)).is_zero());
    }
}

TEST_CASE("repeated and shared zeros fall back to best effort with a warning") {
    Blaschke2D g = testsupport::shared_zero_52_plain();
    IndetSet ind = indeterminacy_points(g);
    CHECK(!ind.warning.empty());
    // (4, 3) = pole(A) x pole(D) is only a fake candidate here: the reduced
    // lift does not vanish, so it must have been dropped.
    for (const auto& pt : ind.finite_points) CHECK(!(pt.z == G(4, 1) && pt.w == G(3, 1)));

    IndetSet ind_m = indeterminacy_points(monomial_map(DegreeMatrix{1, 1, 1, 2}));
    CHECK(!ind_m.warning.empty());
    CHECK(ind_m.finite_points.empty());
}

TEST_CASE("critical jacobian of the monomial map is the expected monomial") {
    CriticalLocus crit = critical_jacobian(monomial_map(DegreeMatrix{1, 1, 1, 2}));
    REQUIRE(bipoly_wdeg(crit.numerator) == 2);
    CHECK(crit.numerator[2].degree() == 1);          // w^2 coefficient is ~z
    CHECK(crit.numerator[2].coeffs()[0].is_zero());  // no constant part
    CHECK(crit.numerator[0].is_zero());
    CHECK(crit.numerator[1].is_zero());
    CHECK(crit.eval_numerator(G(2), G(3)) == G(18));
}

TEST_CASE("rotations rescale the critical locus without moving it") {
    Blaschke2D f = testsupport::generic_12();
    Blaschke2D f_rot = build_map({G(1, 2)}, {G(1, 3)}, {G(1, 5)}, {Gi(0, 1, 1, 4), G(1, 7)},
                                 G(1, 2), G(3));
    CriticalLocus c1 = critical_jacobian(f), c2 = critical_jacobian(f_rot);
    CHECK(bipoly_normalize(c1.numerator) == bipoly_normalize(c2.numerator));

    GaussianRational jv = c1.eval(G(1, 9), G(2, 9));
    CHECK(!jv.is_zero());
    // z = 2 is a pole of A: the full Jacobian value is undefined there.
    CHECK_THROWS_AS(c1.eval(G(2), G(1, 9)), DegenerateConfiguration);
    // Denominators are the pole products.
    CHECK(c1.den_z.eval(G(2)).is_zero());
    CHECK(c1.den_w.eval(G(3)).is_zero());
}

TEST_CASE("exceptional extensions over the blown-up points at infinity") {
    Blaschke2D f = testsupport::generic_12();
    ExceptionalMaps ext = exceptional_extension(f);
    CHECK(ext.z_infinity.h1.scale == G(-2));
    CHECK(ext.z_infinity.h1.degree() == 1);
    CHECK(ext.z_infinity.h1.eval(GaussianRational()) == G(2, 3));
    CHECK(ext.z_infinity.h2.scale == G(-5));
    CHECK(ext.z_infinity.h2.degree() == 2);
    CHECK(!ext.z_infinity.h1.is_constant());
    CHECK(!ext.z_infinity.h1.derivative(GaussianRational()).is_zero());
    // A zero at the origin has no reciprocal; the limit formula fails.
    CHECK_THROWS_AS(exceptional_extension(monomial_map(DegreeMatrix{1, 1, 1, 2})), ZeroAtOrigin);
}

TEST_CASE("pole lines cover the exceptional divisors with the right degree") {
    Blaschke2D f = testsupport::generic_12();
    int seen = 0;
    for (const auto& ln : line_arrangement(f)) {
        if (ln.kind == LineKind::PoleOfA) {
            PoleLineCover cov = pole_line_cover(f, ln);
            CHECK(cov.degree == 2);  // the D factor moves along the divisor: degree q
            CHECK(cov.variable == 'w');
            CHECK(cov.map.scale == G(3));  // C(2) = (2 - 1/5)/(1 - 2/5)
            ++seen;
        }
        if (ln.kind == LineKind::PoleOfD) {
            PoleLineCover cov = pole_line_cover(f, ln);
            CHECK(cov.degree == 1);
            CHECK(cov.variable == 'z');
            ++seen;
        }
        if (ln.kind == LineKind::ZeroOfA) {
            CHECK_THROWS_AS(pole_line_cover(f, ln), PreconditionViolation);
            ++seen;
        }
    }
    CHECK(seen == 4);  // 1 pole of A, 2 poles of D, 1 zero of A

    // A zero shared between A and C degenerates the covering.
    Blaschke2D g = testsupport::shared_zero_52_plain();
    for (const auto& ln : line_arrangement(g))
        if (ln.kind == LineKind::PoleOfA) {
            CHECK_THROWS_AS(pole_line_cover(g, ln), CoincidentZeros);
            break;
        }
}

}  // TEST_SUITE
