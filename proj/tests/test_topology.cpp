#include <doctest.h>

#include <algorithm>
#include <string>

#include "blaschke2d/topology.hpp"
#include "support.hpp"

using namespace blaschke2d;
using testsupport::G;
using testsupport::Gi;

TEST_SUITE("topology_class") {

TEST_CASE("case classification from exact integer witnesses") {
    // Degree 5 below the growth rate 3 + 2 sqrt(2): the witness polynomial
    // value 25 - 6*5 + 1 = -4 is negative.
    CaseLabel l1 = classify_case(DegreeMatrix{5, 2, 2, 1}, 5);
    CHECK(l1.kind == CaseKind::CaseII);
    CHECK(l1.char_poly_sign == -1);
    CHECK(l1.d_top == 5);
    CHECK(l1.trace == 6);
    CHECK(l1.det == 1);
    CHECK(l1.d_top * l1.d_top - l1.trace * l1.d_top + l1.det == -4);
    CHECK(std::string(case_name(l1.kind)) == "CaseII");

    // Degree equal to the growth rate: witness vanishes.
    CaseLabel l2 = classify_case(DegreeMatrix{3, 2, 2, 3}, 5);
    CHECK(l2.kind == CaseKind::CaseIII);
    CHECK(l2.char_poly_sign == 0);

    // Degree above the growth rate: witness 9 - 9 + 1 = 1 with the vertex
    // test 2*3 > 3 picking the upper branch.
    CaseLabel l3 = classify_case(DegreeMatrix{1, 1, 1, 2}, 3);
    CHECK(l3.kind == CaseKind::CaseI);
    CHECK(l3.char_poly_sign == 1);

    // The degree can never drop below det N.
    CHECK_THROWS_AS(classify_case(DegreeMatrix{3, 2, 2, 3}, 4), InvariantViolation);
}

TEST_CASE("origin preimages form the exact zero-pairing multiset") {
    Blaschke2D f = testsupport::generic_12();
    auto pre = preimages_of_origin(f);
    REQUIRE(pre.size() == 3);  // mq + np
    auto has = [&](const GaussianRational& z, const GaussianRational& w) {
        return std::any_of(pre.begin(), pre.end(),
                           [&](const auto& p) { return p.first == z && p.second == w; });
    };
    CHECK(has(G(1, 2), Gi(0, 1, 1, 4)));  // zeros of A x zeros of D
    CHECK(has(G(1, 2), G(1, 7)));
    CHECK(has(G(1, 5), G(1, 3)));  // zeros of C x zeros of B
    for (const auto& [z, w] : pre) {
        EvalResult ev = eval_affine(f, z.to_complex(), w.to_complex());
        REQUIRE(ev.kind == EvalResult::Kind::Finite);
        CHECK(std::abs(ev.z) < 1e-14);
        CHECK(std::abs(ev.w) < 1e-14);
    }

    // Repetitions are kept: the shared-zero family still lists mq + np = 9.
    CHECK(preimages_of_origin(testsupport::shared_zero_52()).size() == 9);
}

TEST_CASE("genericity test: distinct nonzero non-critical zeros") {
    CHECK(is_generic(testsupport::generic_12()).generic);
    CHECK(is_generic(testsupport::generic_12()).reasons.empty());

    GenericityReport mono = is_generic(monomial_map(DegreeMatrix{1, 1, 1, 2}));
    CHECK(!mono.generic);
    CHECK(!mono.reasons.empty());

    GenericityReport rep = is_generic(testsupport::shared_zero_52());
    CHECK(!rep.generic);
    CHECK(!rep.reasons.empty());
}

TEST_CASE("topological degree strategies agree where their premises hold") {
    Blaschke2D f = testsupport::generic_12();
    CHECK(topological_degree(f, DegreeStrategy::ExactGeneric) == 3);
    CHECK(topological_degree(f, DegreeStrategy::Numeric, 42) == 3);
    CHECK_THROWS_AS(topological_degree(f, DegreeStrategy::Monomial), PreconditionViolation);

    Blaschke2D f0 = monomial_map(DegreeMatrix{1, 1, 1, 2});
    CHECK(topological_degree(f0, DegreeStrategy::Monomial) == 1);  // det N
    CHECK_THROWS_AS(topological_degree(f0, DegreeStrategy::ExactGeneric),
                    PreconditionViolation);
}

TEST_CASE("shared zeros push the numeric degree below the generic count") {
    Blaschke2D f = testsupport::shared_zero_52();
    // mq + np = 9, but five preimages survive the cancellation.
    long long d = topological_degree(f, DegreeStrategy::Numeric, 7);
    CHECK(d == 5);
    CaseLabel label = classify_case(f.N(), d);
    CHECK(label.kind == CaseKind::CaseII);
}

TEST_CASE("equal degrees: numeric degree hits det N exactly") {
    GaussianRational a1 = G(1, 5), a2 = Gi(1, 8, 1, 8), a3 = G(-1, 6), b = G(1, 7);
    Blaschke2D f = build_map({a1, a2, a3}, {b, b}, {a1, a2}, {b, b, b}, G(1), G(1));
    long long d = topological_degree(f, DegreeStrategy::Numeric, 11);
    CHECK(d == 5);
    CHECK(d == f.N().det());
    CHECK(classify_case(f.N(), d).kind == CaseKind::CaseIII);
}

}  // TEST_SUITE
