#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "blaschke2d/commands.hpp"
#include "blaschke2d/degree_dynamics.hpp"
#include "blaschke2d/geometry.hpp"
#include "blaschke2d/rng.hpp"
#include "blaschke2d/topology.hpp"
#include "blaschke2d/torus.hpp"
#include "support.hpp"

using namespace blaschke2d;
using testsupport::G;
using testsupport::Gi;
using testsupport::Q;

namespace {

// Tracks the verdict of one criterion and prints its single PASS/FAIL line.
class Criterion {
  public:
    Criterion(const char* name, double budget_seconds)
        : name_(name), budget_(budget_seconds), t0_(std::chrono::steady_clock::now()) {}

    void expect(bool cond, const char* what) {
        CHECK_MESSAGE(cond, what);
        ok_ = ok_ && cond;
    }

    void finish() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        bool in_budget = secs < budget_;
        CHECK_MESSAGE(in_budget, "runtime budget exceeded");
        ok_ = ok_ && in_budget;
        std::printf("[%s] %s (%.1fs, budget %.0fs)\n", ok_ ? "PASS" : "FAIL", name_, secs,
                    budget_);
        std::fflush(stdout);
    }

  private:
    const char* name_;
    double budget_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point t0_;
};

long long mat2_pow_entry(const DegreeMatrix& N, int n, int which) {
    long long a = 1, b = 0, c = 0, d = 1;  // identity
    for (int k = 0; k < n; ++k) {
        long long na = a * N.m + b * N.p, nb = a * N.n + b * N.q;
        long long nc = c * N.m + d * N.p, nd = c * N.n + d * N.q;
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    switch (which) {
        case 0: return a;
        case 1: return b;
        case 2: return c;
        default: return d;
    }
}

bool homology_matches_power(const Blaschke2D& f, int n) {
    DegreeMatrix acted = homology_action(f, n);
    return acted.m == mat2_pow_entry(f.N(), n, 0) && acted.n == mat2_pow_entry(f.N(), n, 1) &&
           acted.p == mat2_pow_entry(f.N(), n, 2) && acted.q == mat2_pow_entry(f.N(), n, 3);
}

}  // namespace

TEST_CASE("acceptance-01 degree growth of a random generic map matches the prediction") {
    Criterion crit("acceptance-01 degree growth of a random generic map", 60.0);

    SplitMix64 rng(2026);
    DegreeMatrix N{1, 1, 1, 2};
    Blaschke2D f = random_generic_map(N, rng);  // zero denominators at most 8

    std::vector<long long> predicted = predicted_degrees(N, 3);
    crit.expect(predicted == std::vector<long long>{5, 13, 34}, "predicted degrees 5, 13, 34");

    DegreeSequence seq = degree_sequence(f, 3);
    crit.expect(!seq.truncated, "sequence not truncated");
    crit.expect(seq.degrees == predicted, "measured degrees equal predicted degrees");

    double target = (3.0 + std::sqrt(5.0)) / 2.0;
    Lambda1Estimate est = estimate_lambda1(seq.degrees);
    crit.expect(std::abs(est.ratio - target) / target < 0.005,
                "degree ratio within 0.5% of the growth rate");

    crit.finish();
}

TEST_CASE("acceptance-02 pullback characteristic polynomial, exhaustively") {
    Criterion crit("acceptance-02 pullback characteristic polynomial", 1.0);

    int checked = 0;
    bool all = true;
    for (int m = 1; m <= 5; ++m)
        for (int n = 1; n <= 5; ++n)
            for (int p = 1; p <= 5; ++p)
                for (int q = 1; q <= 5; ++q) {
                    DegreeMatrix N{m, n, p, q};
                    if (N.det() <= 0) continue;
                    ++checked;
                    CharPoly cp = char_poly(pullback_matrix(N));
                    all = all && cp.c2 == -(m + q) && cp.c1 == N.det() && cp.c0 == 0;
                }
    crit.expect(all, "char(M) = x(x^2 - (m+q)x + det N) for every matrix");
    crit.expect(checked == 288, "288 valid degree matrices with entries up to 5");

    crit.finish();
}

TEST_CASE("acceptance-03 numeric topological degree equals mq + np on generic maps") {
    Criterion crit("acceptance-03 numeric degree of generic maps", 30.0);

    const DegreeMatrix cases[3] = {{1, 1, 1, 2}, {2, 1, 1, 1}, {1, 2, 1, 3}};
    std::uint64_t seeds[3] = {101, 202, 303};
    for (int i = 0; i < 3; ++i) {
        SplitMix64 rng(seeds[i]);
        Blaschke2D f = random_generic_map(cases[i], rng);
        long long expected = (long long)cases[i].m * cases[i].q + (long long)cases[i].n * cases[i].p;

        // solve_system reconciles both elimination orders internally; a
        // disagreement would raise instead of returning.
        SolutionSet s = solve_system(f, Complex{0.31, 0.17}, Complex{-0.22, 0.4});
        bool residuals_ok = true;
        for (double r : s.residuals) residuals_ok = residuals_ok && r < 1e-8;
        crit.expect(residuals_ok, "all scaled residuals below 1e-8");
        crit.expect((long long)s.points.size() == expected, "preimage count equals mq + np");

        long long d = topological_degree(f, DegreeStrategy::Numeric, seeds[i]);
        crit.expect(d == expected, "numeric topological degree equals mq + np");
    }

    crit.finish();
}

TEST_CASE("acceptance-04 shared-zero quintic example: degree five, below the growth rate") {
    Criterion crit("acceptance-04 shared-zero quintic example", 30.0);

    Blaschke2D f = example_low_topdeg();
    crit.expect(f.N() == DegreeMatrix{5, 2, 2, 1}, "degree matrix [[5,2],[2,1]]");

    long long d = topological_degree(f, DegreeStrategy::Numeric, 7);
    crit.expect(d == 5, "numeric topological degree 5");

    CaseLabel label = classify_case(f.N(), d);
    crit.expect(label.kind == CaseKind::CaseII, "classified below the growth rate");
    crit.expect(d * d - label.trace * d + label.det == -4, "witness polynomial value -4");
    crit.expect(c_plus(f.N()).to_string() == "(6+sqrt(32))/2", "growth rate (6+sqrt(32))/2");

    crit.finish();
}

TEST_CASE("acceptance-05 equal-degrees example: degree equals det N, orbits stay on the torus") {
    Criterion crit("acceptance-05 equal-degrees example", 60.0);

    Blaschke2D f = example_equal_degrees();
    crit.expect(f.N() == DegreeMatrix{3, 2, 2, 3}, "degree matrix [[3,2],[2,3]]");

    long long d = topological_degree(f, DegreeStrategy::Numeric, 11);
    crit.expect(d == 5, "numeric topological degree 5");
    crit.expect(d == f.N().det(), "degree equals det N");
    CaseLabel label = classify_case(f.N(), d);
    crit.expect(label.kind == CaseKind::CaseIII, "boundary case: witness vanishes");
    crit.expect(label.char_poly_sign == 0, "witness polynomial value 0");

    BackwardCloud cloud = backward_measure_sample(f, {0.25, 0.66}, 3, 32, 5);
    crit.expect(cloud.deficiency_count == 0, "every backward step found a preimage");
    bool on_torus = true;
    for (double dist : cloud.dist) on_torus = on_torus && dist < 1e-8;
    crit.expect(on_torus, "all depth-3 preimages within 1e-8 of the torus");

    crit.finish();
}

TEST_CASE("acceptance-06 indeterminacy census of random distinct-zero maps") {
    Criterion crit("acceptance-06 indeterminacy census", 10.0);

    SplitMix64 rng(606);
    for (int iter = 0; iter < 10; ++iter) {
        DegreeMatrix N;
        do {
            N.m = 1 + (int)(rng.next() % 3);
            N.n = 1 + (int)(rng.next() % 3);
            N.p = 1 + (int)(rng.next() % 3);
            N.q = 1 + (int)(rng.next() % 3);
        } while (N.det() <= 0);
        Blaschke2D f = random_generic_map(N, rng);

        IndetSet ind = indeterminacy_points(f);
        long long expected = 2LL * (N.m * N.n + N.p * N.q) + ((long long)N.m * N.q + (long long)N.n * N.p);
        crit.expect(ind.warning.empty(), "no degeneracy warning");
        crit.expect((long long)ind.finite_points.size() == expected,
                    "census equals 2(mn+pq) + (mq+np)");

        // Exactness: every census point annihilates all three lift components.
        HomogeneousMap H = lift(f);
        bool vanish = true;
        for (const auto& pt : ind.finite_points)
            vanish = vanish && poly_eval(H.F1, pt.z, pt.w, G(1)).is_zero() &&
                     poly_eval(H.F2, pt.z, pt.w, G(1)).is_zero() &&
                     poly_eval(H.F3, pt.z, pt.w, G(1)).is_zero();
        crit.expect(vanish, "all three lift components vanish exactly");
    }

    crit.finish();
}

TEST_CASE("acceptance-07 homology action of iterates is the matrix power") {
    Criterion crit("acceptance-07 homology action", 30.0);

    Blaschke2D generic = testsupport::generic_12();
    Blaschke2D mono = monomial_map(DegreeMatrix{2, 1, 1, 1});
    for (int n = 1; n <= 3; ++n) {
        crit.expect(homology_matches_power(generic, n), "generic map winding equals N^n");
        crit.expect(homology_matches_power(mono, n), "monomial map winding equals N^n");
    }

    crit.finish();
}

TEST_CASE("acceptance-08 curve-growth entropy matches log of the growth rate") {
    Criterion crit("acceptance-08 curve-growth entropy", 120.0);

    double target = std::log((3.0 + std::sqrt(5.0)) / 2.0);  // 0.9624...

    double h_mono = curve_growth_entropy(monomial_map(DegreeMatrix{2, 1, 1, 1}), 12, 64);
    crit.expect(std::abs(h_mono - target) / target < 0.10,
                "monomial entropy within 10% at twelve levels");

    Blaschke2D pert = testsupport::small_zero_21();  // all zero moduli <= 1/25
    double h_pert = curve_growth_entropy(pert, 12, 64);
    crit.expect(std::abs(h_pert - target) / target < 0.15,
                "perturbed entropy within 15% at twelve levels");

    std::printf("  entropy: monomial %.6f, perturbed %.6f, log c_plus %.6f\n", h_mono, h_pert,
                target);
    crit.finish();
}

TEST_CASE("acceptance-09 rotations leave the exact geometry invariant") {
    Criterion crit("acceptance-09 rotation invariance of the exact geometry", 10.0);

    const GaussianRational seed_pairs[3][2] = {
        {G(1), G(1)},
        {Gi(3, 1, 1, 1), Gi(2, 1, -1, 1)},
        {Gi(1, 1, 2, 1), Gi(5, 1, 3, 1)},
    };
    std::vector<Blaschke2D> maps;
    for (const auto& pair : seed_pairs)
        maps.push_back(build_map({G(1, 2)}, {G(1, 3)}, {G(1, 5)}, {Gi(0, 1, 1, 4), G(1, 7)},
                                 pair[0], pair[1]));

    IndetSet base_ind = indeterminacy_points(maps[0]);
    auto base_lines = line_arrangement(maps[0]);
    BiPoly base_crit = bipoly_normalize(critical_jacobian(maps[0]).numerator);

    for (std::size_t i = 1; i < maps.size(); ++i) {
        IndetSet ind = indeterminacy_points(maps[i]);
        bool same_ind = ind.finite_points.size() == base_ind.finite_points.size();
        for (std::size_t k = 0; same_ind && k < ind.finite_points.size(); ++k)
            same_ind = ind.finite_points[k] == base_ind.finite_points[k];
        crit.expect(same_ind, "indeterminacy set unchanged by rotations");

        auto lines = line_arrangement(maps[i]);
        bool same_lines = lines.size() == base_lines.size();
        for (std::size_t k = 0; same_lines && k < lines.size(); ++k)
            same_lines = lines[k].kind == base_lines[k].kind &&
                         lines[k].defining == base_lines[k].defining &&
                         lines[k].parameter == base_lines[k].parameter &&
                         lines[k].degenerate == base_lines[k].degenerate;
        crit.expect(same_lines, "zero/pole line arrangement unchanged by rotations");

        crit.expect(bipoly_normalize(critical_jacobian(maps[i]).numerator) == base_crit,
                    "normalized critical locus unchanged by rotations");
    }

    crit.finish();
}

TEST_CASE("acceptance-10 exactness and measure property suite") {
    Criterion crit("acceptance-10 exactness and measure properties", 120.0);

    // GCD divisibility and cofactor coprimality over random factor products.
    {
        SplitMix64 rng(1010);
        auto rand_linear = [&]() {
            auto coeff = [&]() {
                return GaussianRational(Q((long)(rng.next() % 9) - 4, 1 + (long)(rng.next() % 5)),
                                        Q((long)(rng.next() % 9) - 4, 1 + (long)(rng.next() % 5)));
            };
            TriPoly l = TriPoly::linear(coeff(), coeff(), coeff());
            return l.is_zero() ? TriPoly::linear(G(1), G(1), G(0)) : l;
        };
        bool gcd_ok = true;
        for (int iter = 0; iter < 12 && gcd_ok; ++iter) {
            TriPoly common = poly_mul(rand_linear(), rand_linear());
            TriPoly p = poly_mul(common, rand_linear());
            TriPoly q = poly_mul(common, rand_linear());
            TriPoly g = poly_gcd(p, q);
            auto cp = try_divide(p, g);
            auto cq = try_divide(q, g);
            gcd_ok = cp.has_value() && cq.has_value() && g.degree() >= common.degree() &&
                     poly_gcd(*cp, *cq).is_constant();
        }
        crit.expect(gcd_ok, "gcd divides both inputs and leaves coprime cofactors");
    }

    // Rotation values are unimodular in exact arithmetic.
    {
        SplitMix64 rng(2020);
        bool uni_ok = true;
        for (int iter = 0; iter < 25; ++iter) {
            GaussianRational seed(Q((long)(rng.next() % 19) - 9, 1 + (long)(rng.next() % 9)),
                                  Q((long)(rng.next() % 19) - 9, 1 + (long)(rng.next() % 9)));
            if (seed.is_zero()) seed = G(1);
            UnimodularRotation rot(seed);
            uni_ok = uni_ok && rot.value() * rot.value().conj() == G(1);
        }
        crit.expect(uni_ok, "rotation times its conjugate is exactly one");
    }

    // Solver recovers planted preimages.
    {
        SolutionSet s = solve_system(monomial_map(DegreeMatrix{1, 1, 1, 2}), Complex{6, 0},
                                     Complex{18, 0});
        bool planted = s.points.size() == 1 && std::abs(s.points[0].first - Complex{2, 0}) < 1e-9 &&
                       std::abs(s.points[0].second - Complex{3, 0}) < 1e-9;
        crit.expect(planted, "monomial system recovers the planted preimage (2, 3)");

        Blaschke2D f = testsupport::generic_12();
        SolutionSet s0 = solve_system(f, Complex{0, 0}, Complex{0, 0});
        auto origin = preimages_of_origin(f);
        bool all_found = s0.points.size() == origin.size();
        for (const auto& [z, w] : origin) {
            bool found = false;
            for (const auto& pt : s0.points)
                found = found || (std::abs(pt.first - z.to_complex()) < 1e-9 &&
                                  std::abs(pt.second - w.to_complex()) < 1e-9);
            all_found = all_found && found;
        }
        crit.expect(all_found, "solver finds exactly the exact origin preimages");
    }

    // Monomial backward orbits never leave the torus.
    {
        BackwardCloud mono =
            backward_measure_sample(monomial_map(DegreeMatrix{2, 1, 1, 1}), {0.37, 0.12}, 3, 64, 99);
        double worst = 0.0;
        for (double d : mono.dist) worst = std::max(worst, d);
        crit.expect(worst < 1e-12, "monomial backward distances identically zero");
    }

    // Off-torus mass of perturbed maps: reported, not asserted — desk-scale
    // sampling cannot decide measure-theoretic statements.
    {
        Blaschke2D small = testsupport::small_zero_12();
        BackwardCloud cloud = backward_measure_sample(small, {0.3, 0.8}, 3, 64, 123);
        DistHistogram h = histogram(cloud.dist);
        const auto& edges = DistHistogram::edges();
        std::printf("  backward distance histogram (small-zero map, depth 3, %d samples):\n",
                    cloud.samples);
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            if (h.counts[i] == 0) continue;
            if (i + 1 < edges.size())
                std::printf("    [%g, %g): %lld\n", edges[i], edges[i + 1], h.counts[i]);
            else
                std::printf("    [%g, inf): %lld\n", edges[i], h.counts[i]);
        }
        std::printf("  (distribution reported for inspection only)\n");
    }

    crit.finish();
}
