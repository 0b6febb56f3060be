#include <doctest.h>

#include <array>
#include <cmath>

#include "blaschke2d/degree_dynamics.hpp"
#include "support.hpp"

using namespace blaschke2d;
using testsupport::G;
using testsupport::Gi;

TEST_SUITE("degree_dynamics") {

TEST_CASE("pullback matrix entries and action on the line class") {
    PullbackMatrix M = pullback_matrix(DegreeMatrix{1, 1, 1, 2});
    long long expect[3][3] = {{2, 3, 2}, {1, 2, 1}, {-1, -2, -1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(M.a[i][j] == expect[i][j]);
    // The vertical-line class pulls back to (1,1,0); its first component
    // under M^k is the predicted degree of the k-th iterate.
    std::array<long long, 3> v{1, 1, 0};
    v = M.apply(v);
    CHECK(v[0] == 5);
    v = M.apply(v);
    CHECK(v[0] == 13);
}

TEST_CASE("characteristic polynomial collapses to x(x^2 - tr x + det)") {
    CharPoly cp = char_poly(pullback_matrix(DegreeMatrix{1, 1, 1, 2}));
    CHECK(cp.c2 == -3);
    CHECK(cp.c1 == 1);
    CHECK(cp.c0 == 0);
    CharPoly cp2 = char_poly(pullback_matrix(DegreeMatrix{4, 2, 3, 5}));
    CHECK(cp2.c2 == -9);
    CHECK(cp2.c1 == 14);
    CHECK(cp2.c0 == 0);
}

TEST_CASE("predicted degree sequences") {
    CHECK(predicted_degrees(DegreeMatrix{1, 1, 1, 2}, 3) == std::vector<long long>{5, 13, 34});
    CHECK(monomial_degrees(DegreeMatrix{1, 1, 1, 2}, 5) ==
          std::vector<long long>{3, 8, 21, 55, 144});
    CHECK(monomial_degrees(DegreeMatrix{2, 1, 1, 1}, 3) == std::vector<long long>{3, 8, 21});
}

TEST_CASE("measured degrees of a generic map match the prediction") {
    DegreeSequence seq = degree_sequence(testsupport::generic_12(), 3);
    CHECK(!seq.truncated);
    CHECK(seq.degrees == std::vector<long long>{5, 13, 34});

    Lambda1Estimate est = estimate_lambda1(seq.degrees);
    double target = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(est.ratio == doctest::Approx(34.0 / 13.0));
    CHECK(std::abs(est.ratio - target) / target < 0.005);
    CHECK(est.root == doctest::Approx(std::cbrt(34.0)));
}

TEST_CASE("measured degrees of a monomial map match the row-sum formula") {
    DegreeSequence mseq = degree_sequence(monomial_map(DegreeMatrix{1, 1, 1, 2}), 4);
    CHECK(!mseq.truncated);
    CHECK(mseq.degrees == std::vector<long long>{3, 8, 21, 55});
}

TEST_CASE("a blown term budget truncates instead of failing") {
    DegreeSequence seq = degree_sequence(testsupport::generic_12(), 3, 40);
    CHECK(seq.truncated);
    CHECK(seq.degrees.size() < 3);
    for (std::size_t i = 0; i < seq.degrees.size(); ++i) CHECK(seq.degrees[i] > 0);
}

TEST_CASE("factored composition equals the expand-then-divide reference") {
    // Degenerate on purpose: C repeats A's zero and D doubles B's.
    Blaschke2D g = build_map({G(1, 2)}, {G(1, 3)}, {G(1, 2)}, {G(1, 3), G(1, 3)}, G(1), G(1));
    HomogeneousMap H1 = lift(g);
    CHECK(H1.degree == 3);
    HomogeneousMap fast = compose_reduce(g, H1);
    HomogeneousMap slow = compose_reduce_generic(lift(g), H1);
    CHECK(fast.degree == slow.degree);
    auto normalized = [](const HomogeneousMap& h) {
        GaussianRational inv = h.F3.leading_coefficient().inverse();
        return std::array<TriPoly, 3>{poly_scale(h.F1, inv), poly_scale(h.F2, inv),
                                      poly_scale(h.F3, inv)};
    };
    auto nf = normalized(fast), ns = normalized(slow);
    CHECK(nf[0] == ns[0]);
    CHECK(nf[1] == ns[1]);
    CHECK(nf[2] == ns[2]);
}

TEST_CASE("growth-rate surds print exactly") {
    CHECK(c_plus(DegreeMatrix{5, 2, 2, 1}).to_string() == "(6+sqrt(32))/2");
    CHECK(c_plus(DegreeMatrix{3, 2, 2, 3}).to_string() == "5");
    CHECK(c_plus(DegreeMatrix{2, 1, 1, 1}).to_string() == "(3+sqrt(5))/2");
    // Perfect-square discriminant collapses to a rational.
    CHECK(c_plus(DegreeMatrix{2, 2, 1, 3}).to_string() == "4");
    CHECK(c_plus(DegreeMatrix{1, 1, 1, 2}).value() ==
          doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    CHECK(c_plus(DegreeMatrix{5, 2, 2, 1}).value() ==
          doctest::Approx(3.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

}  // TEST_SUITE
