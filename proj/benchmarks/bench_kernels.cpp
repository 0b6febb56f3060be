// Side-by-side timings of the OpenMP kernels against their serial reference
// implementations: exact polynomial products, bulk torus stepping, and
// backward-orbit sampling.  The parallel and serial paths must agree exactly;
// the unit tests assert that, this target measures the gap.

#include <benchmark/benchmark.h>

#include <cmath>
#include <string>
#include <vector>

#include "blaschke2d/solver.hpp"
#include "blaschke2d/torus.hpp"
#include "blaschke2d/tri_poly.hpp"

using namespace blaschke2d;

namespace {

GaussianRational grat(long rn, long rd, long in, long id) {
    return GaussianRational(Rational(rn, rd), Rational(in, id));
}

TriPoly dense_factor(int power) {
    return poly_pow(TriPoly::linear(grat(1, 2, -1, 3), grat(2, 5, 1, 7), grat(-3, 4, 2, 9)),
                    static_cast<unsigned>(power));
}

Blaschke2D small_zero_map() {
    return build_map({grat(1, 25, 0, 1)}, {grat(0, 1, 1, 30)}, {grat(-1, 40, 0, 1)},
                     {grat(1, 50, 0, 1), grat(-1, 60, 0, 1)}, GaussianRational(1),
                     GaussianRational(1));
}

std::vector<TorusPoint> point_cloud(int count) {
    std::vector<TorusPoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i)
        pts.push_back({i / (double)count, std::fmod(0.377 * i + 0.1, 1.0)});
    return pts;
}

void bench_poly_mul(benchmark::State& state, bool parallel) {
    TriPoly a = dense_factor(static_cast<int>(state.range(0)));
    TriPoly b = dense_factor(static_cast<int>(state.range(0)) + 1);
    for (auto _ : state) {
        TriPoly prod = parallel ? poly_mul(a, b) : poly_mul_serial(a, b);
        benchmark::DoNotOptimize(prod);
    }
    state.SetLabel(std::to_string(a.term_count()) + "x" + std::to_string(b.term_count()) +
                   " terms");
}

void bench_map_points(benchmark::State& state, bool parallel) {
    Blaschke2D f = small_zero_map();
    std::vector<TorusPoint> base = point_cloud(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        std::vector<TorusPoint> pts = base;
        map_points(f, pts, parallel);
        benchmark::DoNotOptimize(pts);
    }
}

void bench_backward_sample(benchmark::State& state, bool parallel) {
    Blaschke2D f = small_zero_map();
    SolverConfig cfg;
    cfg.parallel = parallel;
    for (auto _ : state) {
        BackwardCloud cloud = backward_measure_sample(f, {0.3, 0.8}, 3,
                                                      static_cast<int>(state.range(0)), 123,
                                                      BranchRule::Uniform, cfg);
        benchmark::DoNotOptimize(cloud);
    }
}

void poly_mul_omp(benchmark::State& s) { bench_poly_mul(s, true); }
void poly_mul_serial_ref(benchmark::State& s) { bench_poly_mul(s, false); }
void map_points_omp(benchmark::State& s) { bench_map_points(s, true); }
void map_points_serial_ref(benchmark::State& s) { bench_map_points(s, false); }
void backward_sample_omp(benchmark::State& s) { bench_backward_sample(s, true); }
void backward_sample_serial_ref(benchmark::State& s) { bench_backward_sample(s, false); }

BENCHMARK(poly_mul_omp)->Arg(10)->Arg(16);
BENCHMARK(poly_mul_serial_ref)->Arg(10)->Arg(16);
BENCHMARK(map_points_omp)->Arg(4096)->Arg(32768);
BENCHMARK(map_points_serial_ref)->Arg(4096)->Arg(32768);
BENCHMARK(backward_sample_omp)->Arg(16)->Arg(64);
BENCHMARK(backward_sample_serial_ref)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
