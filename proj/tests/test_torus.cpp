#include <doctest.h>

#include <cmath>

#include "blaschke2d/degree_dynamics.hpp"
#include "blaschke2d/torus.hpp"
#include "support.hpp"

using namespace blaschke2d;
using testsupport::G;
using testsupport::Gi;

TEST_SUITE("torus_dynamics") {

TEST_CASE("torus geometry helpers wrap correctly") {
    TorusPoint r = reduced({1.25, -0.25});
    CHECK(r.x == doctest::Approx(0.25));
    CHECK(r.y == doctest::Approx(0.75));
    CHECK(torus_distance({0.95, 0.0}, {0.05, 0.0}) == doctest::Approx(0.1));
    CHECK(torus_distance({0.25, 0.75}, {0.25, 0.25}) == doctest::Approx(0.5));
    CHECK(torus_distance({0.3, 0.3}, {0.3, 0.3}) == 0.0);
}

TEST_CASE("monomial maps act linearly on angles, exactly") {
    Blaschke2D f0 = monomial_map(DegreeMatrix{1, 1, 1, 2});
    TorusPoint p = torus_step(f0, {0.3, 0.2});
    CHECK(std::abs(p.x - 0.5) < 1e-15);
    CHECK(std::abs(p.y - 0.7) < 1e-15);
    TorusPoint fix = torus_step(f0, {0.0, 0.0});
    CHECK(fix.x == 0.0);
    CHECK(fix.y == 0.0);
}

TEST_CASE("bulk stepping: parallel kernel equals the serial reference") {
    Blaschke2D f = testsupport::small_zero_12();
    std::vector<TorusPoint> a, b;
    for (int i = 0; i < 257; ++i) a.push_back({i / 257.0, std::fmod(0.37 * i, 1.0)});
    b = a;
    map_points(f, a, true);
    map_points(f, b, false);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
    }
}

TEST_CASE("orbits of torus points stay on the torus") {
    Blaschke2D f = testsupport::small_zero_12();
    TorusPoint p{0.123, 0.456};
    for (int i = 0; i < 10000; ++i) p = torus_step(f, p);
    CHECK(p.x >= 0.0);
    CHECK(p.x < 1.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y < 1.0);
}

TEST_CASE("homology action of iterates is the matrix power") {
    Blaschke2D f = testsupport::generic_12();
    CHECK(homology_action(f, 1) == DegreeMatrix{1, 1, 1, 2});
    CHECK(homology_action(f, 2) == DegreeMatrix{2, 3, 3, 5});
    Blaschke2D f0 = monomial_map(DegreeMatrix{2, 1, 1, 1});
    CHECK(homology_action(f0, 3) == DegreeMatrix{13, 8, 8, 5});
}

TEST_CASE("curve growth entropy: exact linear model nails log c_plus") {
    Blaschke2D f0 = monomial_map(DegreeMatrix{2, 1, 1, 1});
    double target = std::log(c_plus(DegreeMatrix{2, 1, 1, 1}).value());
    double h9 = curve_growth_entropy(f0, 9, 64);
    CHECK(std::abs(h9 - target) / target < 1e-9);
    // Fewer than three levels cannot support the slope fit.
    CHECK_THROWS_AS(curve_growth_entropy(f0, 2, 16), PreconditionViolation);
}

TEST_CASE("attracting pair: interior fixed point and its exterior twin") {
    Blaschke2D f0 = monomial_map(DegreeMatrix{1, 1, 1, 2});
    AttractingPair p0 = attracting_pair(f0, 1e-12);
    CHECK(p0.interior_converged);
    CHECK(p0.exterior_converged);
    CHECK(std::abs(p0.interior.first) < 1e-12);
    CHECK(std::abs(p0.interior.second) < 1e-12);
    CHECK(std::abs(p0.exterior_chart.first) < 1e-12);

    Blaschke2D f = testsupport::small_zero_12();
    AttractingPair pr = attracting_pair(f, 1e-12);
    CHECK(pr.interior_converged);
    CHECK(pr.interior_residual < 1e-12);
    CHECK(std::abs(pr.interior.first) <= 1.0);
    CHECK(std::abs(pr.interior.second) <= 1.0);
    EvalResult img = eval_affine(f, pr.interior.first, pr.interior.second);
    REQUIRE(img.kind == EvalResult::Kind::Finite);
    CHECK(std::abs(img.z - pr.interior.first) < 1e-10);
    CHECK(std::abs(img.w - pr.interior.second) < 1e-10);
}

TEST_CASE("backward sampling is deterministic and complete on monomial maps") {
    Blaschke2D f0 = monomial_map(DegreeMatrix{1, 1, 1, 2});
    BackwardCloud cloud = backward_measure_sample(f0, {0.37, 0.12}, 4, 32, 99);
    CHECK(cloud.samples == 32);
    CHECK(cloud.deficiency_count == 0);
    REQUIRE(cloud.cloud.points.size() == 32);
    REQUIRE(cloud.dist.size() == 32);
    CHECK(cloud.cloud.weight() == doctest::Approx(1.0 / 32));
    // All zeros at the origin: backward orbits never leave the torus.
    for (double d : cloud.dist) CHECK(d < 1e-12);

    BackwardCloud again = backward_measure_sample(f0, {0.37, 0.12}, 4, 32, 99);
    for (std::size_t i = 0; i < cloud.cloud.points.size(); ++i) {
        CHECK(cloud.cloud.points[i].first == again.cloud.points[i].first);
        CHECK(cloud.cloud.points[i].second == again.cloud.points[i].second);
    }
    // The multiplicity-weighted rule is deterministic too.
    BackwardCloud mw = backward_measure_sample(f0, {0.37, 0.12}, 3, 8, 7,
                                               BranchRule::MultiplicityWeighted);
    BackwardCloud mw2 = backward_measure_sample(f0, {0.37, 0.12}, 3, 8, 7,
                                                BranchRule::MultiplicityWeighted);
    for (std::size_t i = 0; i < mw.cloud.points.size(); ++i)
        CHECK(mw.cloud.points[i] == mw2.cloud.points[i]);
}

TEST_CASE("equal-degrees family keeps backward orbits on the torus") {
    GaussianRational a1 = G(1, 5), a2 = Gi(1, 8, 1, 8), a3 = G(-1, 6), b = G(1, 7);
    Blaschke2D f = build_map({a1, a2, a3}, {b, b}, {a1, a2}, {b, b, b}, G(1), G(1));
    BackwardCloud cloud = backward_measure_sample(f, {0.25, 0.66}, 3, 24, 5);
    CHECK(cloud.deficiency_count == 0);
    for (double d : cloud.dist) CHECK(d < 1e-8);
}

TEST_CASE("distance histogram: twelve pinned buckets, overflow at the top") {
    const auto& edges = DistHistogram::edges();
    REQUIRE(edges.size() == 12);
    CHECK(edges.front() == 0.0);
    CHECK(edges[1] == 1e-12);
    CHECK(edges.back() == 1.0);

    DistHistogram h = histogram({0.0, 1e-13, 0.3, 2.0});
    REQUIRE(h.counts.size() == 12);
    CHECK(h.counts[0] == 2);   // [0, 1e-12)
    CHECK(h.counts[9] == 1);   // [0.2, 0.5)
    CHECK(h.counts[11] == 1);  // >= 1.0
    long long total = 0;
    for (long long c : h.counts) total += c;
    CHECK(total == 4);

    // Counts over a real cloud partition the samples.
    Blaschke2D f = testsupport::small_zero_12();
    BackwardCloud cloud = backward_measure_sample(f, {0.3, 0.8}, 4, 48, 123);
    DistHistogram hh = histogram(cloud.dist);
    total = 0;
    for (long long c : hh.counts) total += c;
    CHECK(total == cloud.samples);
}

}  // TEST_SUITE
