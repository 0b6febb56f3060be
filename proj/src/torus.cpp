#include "blaschke2d/torus.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "blaschke2d/rng.hpp"

namespace blaschke2d {

TorusPoint reduced(TorusPoint pt) {
    pt.x -= std::floor(pt.x);
    pt.y -= std::floor(pt.y);
    if (pt.x >= 1.0) pt.x = 0.0;  // floor rounding can leave exactly 1.0
    if (pt.y >= 1.0) pt.y = 0.0;
    return pt;
}

namespace {

double wrap_half(double d) { return d - std::round(d); }

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Per-map stepping context: the linear route for monomial-style maps, the
// evaluation kernel otherwise.  Hoists the rotation-angle conversions out of
// the hot loop.
struct Stepper {
    const Blaschke2D* f;
    bool linear;
    double m, n, p, q;
    double off1, off2;

    explicit Stepper(const Blaschke2D& map) : f(&map) {
        linear = map.all_zeros_zero();
        m = static_cast<double>(map.N().m);
        n = static_cast<double>(map.N().n);
        p = static_cast<double>(map.N().p);
        q = static_cast<double>(map.N().q);
        off1 = std::arg(map.theta1().to_complex()) / kTwoPi;
        off2 = std::arg(map.theta2().to_complex()) / kTwoPi;
    }

    TorusPoint operator()(TorusPoint pt) const {
        if (linear)
            return reduced({off1 + m * pt.x + n * pt.y, off2 + p * pt.x + q * pt.y});
        Complex z = std::polar(1.0, kTwoPi * pt.x);
        Complex w = std::polar(1.0, kTwoPi * pt.y);
        EvalResult ev = eval_affine(*f, z, w);
        if (ev.kind != EvalResult::Kind::Finite)
            throw DegenerateConfiguration("torus orbit hit a non-finite value");
        return reduced({std::arg(ev.z) / kTwoPi, std::arg(ev.w) / kTwoPi});
    }

    TorusPoint steps(TorusPoint pt, int count) const {
        for (int i = 0; i < count; ++i) pt = (*this)(pt);
        return pt;
    }
};

}  // namespace

double torus_distance(TorusPoint a, TorusPoint b) {
    double dx = wrap_half(a.x - b.x);
    double dy = wrap_half(a.y - b.y);
    return std::sqrt(dx * dx + dy * dy);
}

TorusPoint torus_step(const Blaschke2D& f, TorusPoint pt) { return Stepper(f)(pt); }

void map_points(const Blaschke2D& f, std::vector<TorusPoint>& pts, bool parallel) {
    Stepper step(f);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = step(pts[i]);
    } else {
        for (auto& pt : pts) pt = step(pt);
    }
}

namespace {

// Total signed turns of one angle coordinate along the image of a generator
// loop, at a resolution where no segment jumps more than a quarter turn.
struct Winding {
    long long z_turns;
    long long w_turns;
};

Winding loop_winding(const Stepper& step, bool z_generator, int n) {
    constexpr int kMaxSamples = 1 << 22;
    for (int samples = 256; samples <= kMaxSamples; samples *= 2) {
        std::vector<TorusPoint> image(static_cast<std::size_t>(samples));
#pragma omp parallel for schedule(static)
        for (int k = 0; k < samples; ++k) {
            double t = static_cast<double>(k) / samples;
            TorusPoint start = z_generator ? TorusPoint{t, 0.0} : TorusPoint{0.0, t};
            image[static_cast<std::size_t>(k)] = step.steps(start, n);
        }
        double sum_x = 0.0, sum_y = 0.0;
        bool jumped = false;
        for (int k = 0; k < samples && !jumped; ++k) {
            const TorusPoint& a = image[static_cast<std::size_t>(k)];
            const TorusPoint& b = image[static_cast<std::size_t>((k + 1) % samples)];
            double dx = wrap_half(b.x - a.x);
            double dy = wrap_half(b.y - a.y);
            if (std::abs(dx) > 0.25 || std::abs(dy) > 0.25) jumped = true;
            sum_x += dx;
            sum_y += dy;
        }
        if (jumped) continue;
        long long wx = std::llround(sum_x), wy = std::llround(sum_y);
        if (std::abs(sum_x - wx) > 0.05 || std::abs(sum_y - wy) > 0.05)
            throw LiftDiscontinuity("winding sum far from an integer");
        return {wx, wy};
    }
    throw LiftDiscontinuity("quarter-turn jump persists at the finest subdivision");
}

}  // namespace

DegreeMatrix homology_action(const Blaschke2D& f, int n) {
    if (n < 1) throw PreconditionViolation("homology action needs n >= 1");
    Stepper step(f);
    Winding col1 = loop_winding(step, /*z_generator=*/true, n);
    Winding col2 = loop_winding(step, /*z_generator=*/false, n);
    auto narrow = [](long long v) {
        if (v > INT_MAX || v < INT_MIN)
            throw LiftDiscontinuity("winding number out of integer range");
        return static_cast<int>(v);
    };
    return DegreeMatrix{narrow(col1.z_turns), narrow(col2.z_turns), narrow(col1.w_turns),
                        narrow(col2.w_turns)};
}

namespace {

constexpr double kGap = 0.01;
constexpr std::size_t kPointBudget = std::size_t{1} << 24;

// Angle-coordinate policy: exact integer arithmetic, used for the
// monomial-style maps where the torus action is linear.  Midpoint insertion
// jumps straight to level k through a precomputed table of N^k and the
// accumulated rotation offsets.
struct AnglePolicy {
    Stepper stepper;
    struct Row {
        double m, n, p, q, ox, oy;
    };
    std::vector<Row> levels;  // levels[k] sends gamma_1(t) to f^k(gamma_1(t))

    explicit AnglePolicy(const Blaschke2D& f) : stepper(f) {
        long long m = f.N().m, n = f.N().n, p = f.N().p, q = f.N().q;
        long long em = 1, en = 0, ep = 0, eq = 1;
        double ox = 0.0, oy = 0.0;
        levels.push_back({1, 0, 0, 1, 0, 0});
        constexpr long long kEntryCap = 1LL << 40;  // keep double conversion exact
        while (std::max({em, en, ep, eq}) < kEntryCap && levels.size() < 64) {
            double nox = stepper.off1 + static_cast<double>(m) * ox + static_cast<double>(n) * oy;
            double noy = stepper.off2 + static_cast<double>(p) * ox + static_cast<double>(q) * oy;
            long long nm = m * em + n * ep, nn = m * en + n * eq;
            long long np = p * em + q * ep, nq = p * en + q * eq;
            em = nm;
            en = nn;
            ep = np;
            eq = nq;
            ox = nox - std::floor(nox);
            oy = noy - std::floor(noy);
            levels.push_back({static_cast<double>(em), static_cast<double>(en),
                              static_cast<double>(ep), static_cast<double>(eq), ox, oy});
        }
    }

    using Point = TorusPoint;
    Point start(double t) const { return {t - std::floor(t), 0.0}; }

    Point start_at(double t, int level) const {
        if (level < static_cast<int>(levels.size())) {
            const Row& row = levels[static_cast<std::size_t>(level)];
            return reduced({row.ox + row.m * t, row.oy + row.p * t});
        }
        Point p = start(t);
        for (int i = 0; i < level; ++i) p = step(p);
        return p;
    }

    Point step(Point p) const { return stepper(p); }
    static double dist(Point a, Point b) { return torus_distance(a, b); }
};

// Unit-complex policy for general maps: the step is the four one-variable
// Blaschke products directly (no poles exist on the torus), moduli are
// renormalized every step, and segment lengths use chords scaled to angle
// units.  Avoids every trigonometric call on the hot path.
struct ChordPolicy {
    Complex theta1, theta2;
    std::vector<Complex> za, zb, zc, zd;

    explicit ChordPolicy(const Blaschke2D& f) {
        theta1 = f.theta1().to_complex();
        theta2 = f.theta2().to_complex();
        auto convert = [](const std::vector<GaussianRational>& zeros) {
            std::vector<Complex> out;
            out.reserve(zeros.size());
            for (const auto& zero : zeros) out.push_back(zero.to_complex());
            return out;
        };
        za = convert(f.A().zeros());
        zb = convert(f.B().zeros());
        zc = convert(f.C().zeros());
        zd = convert(f.D().zeros());
    }

    using Point = std::pair<Complex, Complex>;

    Point start(double t) const { return {std::polar(1.0, kTwoPi * t), Complex{1.0, 0.0}}; }

    Point start_at(double t, int level) const {
        Point p = start(t);
        for (int i = 0; i < level; ++i) p = step(p);
        return p;
    }

    static Complex product(const std::vector<Complex>& zeros, Complex x) {
        Complex acc{1.0, 0.0};
        for (Complex a : zeros) {
            Complex num = x - a;
            Complex den = 1.0 - std::conj(a) * x;
            acc *= num * std::conj(den) * (1.0 / std::norm(den));
        }
        return acc;
    }

    Point step(Point p) const {
        Complex z = theta1 * product(za, p.first) * product(zb, p.second);
        Complex w = theta2 * product(zc, p.first) * product(zd, p.second);
        z *= 1.0 / std::abs(z);
        w *= 1.0 / std::abs(w);
        return {z, w};
    }

    static double dist(const Point& a, const Point& b) {
        double dz = std::abs(a.first - b.first);
        double dw = std::abs(a.second - b.second);
        return std::sqrt(dz * dz + dw * dw) / kTwoPi;
    }
};

// Appends the interior refinement of segment (ta, pa) .. (tb, pb) so adjacent
// images end up closer than the gap; each new parameter is pushed through
// `level` full steps.
template <class Policy>
void refine_segment(const Policy& policy, int level, double ta,
                    const typename Policy::Point& pa, double tb,
                    const typename Policy::Point& pb,
                    std::vector<std::pair<double, typename Policy::Point>>& out, int depth) {
    if (Policy::dist(pa, pb) <= kGap) return;
    if (depth > 48) throw RefinementBudget("curve refinement recursion too deep");
    double tm = 0.5 * (ta + tb);
    typename Policy::Point pm = policy.start_at(tm, level);
    refine_segment(policy, level, ta, pa, tm, pm, out, depth + 1);
    out.emplace_back(tm, pm);
    refine_segment(policy, level, tm, pm, tb, pb, out, depth + 1);
}

template <class Policy>
double entropy_impl(const Policy& policy, int n_max, int samples) {
    using Point = typename Policy::Point;

    std::vector<double> ts(static_cast<std::size_t>(samples));
    std::vector<Point> pts(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        ts[static_cast<std::size_t>(k)] = static_cast<double>(k) / samples;
        pts[static_cast<std::size_t>(k)] = policy.start(ts[static_cast<std::size_t>(k)]);
    }

    std::vector<double> log_length(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int level = 1; level <= n_max; ++level) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = policy.step(pts[i]);

        // Refine each segment (the loop closes back to index 0) in parallel,
        // then splice in order so the result is schedule-independent.
        std::size_t count = pts.size();
        std::vector<std::vector<std::pair<double, Point>>> fill(count);
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 64)
        for (std::size_t i = 0; i < count; ++i) {
            try {
                std::size_t j = (i + 1) % count;
                double tb = (j == 0) ? ts[0] + 1.0 : ts[j];
                refine_segment(policy, level, ts[i], pts[i], tb, pts[j], fill[i], 0);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);

        std::size_t total = count;
        for (const auto& seg : fill) total += seg.size();
        if (total > kPointBudget)
            throw RefinementBudget("curve needs " + std::to_string(total) +
                                   " points, budget is " + std::to_string(kPointBudget));

        std::vector<double> new_ts;
        std::vector<Point> new_pts;
        new_ts.reserve(total);
        new_pts.reserve(total);
        double length = 0.0;
        auto push = [&](double t, const Point& p) {
            if (!new_pts.empty()) length += Policy::dist(new_pts.back(), p);
            new_ts.push_back(t);
            new_pts.push_back(p);
        };
        for (std::size_t i = 0; i < count; ++i) {
            push(ts[i], pts[i]);
            for (const auto& [t, p] : fill[i]) push(t, p);
        }
        length += Policy::dist(new_pts.back(), new_pts.front());  // closing segment
        log_length[static_cast<std::size_t>(level)] = std::log(length);
        ts = std::move(new_ts);
        pts = std::move(new_pts);
    }

    // Least-squares slope of log length against n over the last third.
    int window = std::max(2, n_max / 3 + 1);
    int first = n_max - window + 1;
    double mean_n = 0.0, mean_y = 0.0;
    for (int k = first; k <= n_max; ++k) {
        mean_n += k;
        mean_y += log_length[static_cast<std::size_t>(k)];
    }
    mean_n /= window;
    mean_y /= window;
    double cov = 0.0, var = 0.0;
    for (int k = first; k <= n_max; ++k) {
        cov += (k - mean_n) * (log_length[static_cast<std::size_t>(k)] - mean_y);
        var += (k - mean_n) * (k - mean_n);
    }
    return cov / var;
}

}  // namespace

double curve_growth_entropy(const Blaschke2D& f, int n_max, int samples) {
    if (n_max < 3) throw PreconditionViolation("entropy estimate needs n_max >= 3");
    if (samples < 8) throw PreconditionViolation("entropy estimate needs >= 8 initial samples");
    if (f.all_zeros_zero()) return entropy_impl(AnglePolicy(f), n_max, samples);
    return entropy_impl(ChordPolicy(f), n_max, samples);
}

namespace {

struct FixedPointRun {
    std::pair<Complex, Complex> point;
    double residual;
    bool converged;
};

FixedPointRun iterate_to_fixed_point(const Blaschke2D& f, double tol) {
    constexpr int kMaxIters = 200000;
    Complex z{0.0, 0.0}, w{0.0, 0.0};
    for (int it = 0; it < kMaxIters; ++it) {
        EvalResult next = eval_affine(f, z, w);
        if (next.kind != EvalResult::Kind::Finite)
            throw NonConvergence("fixed-point orbit left the finite chart");
        double moved = std::max(std::abs(next.z - z), std::abs(next.w - w));
        z = next.z;
        w = next.w;
        if (moved < tol) {
            EvalResult check = eval_affine(f, z, w);
            double residual =
                std::max(std::abs(check.z - z), std::abs(check.w - w));
            return {{z, w}, residual, residual < tol};
        }
    }
    EvalResult check = eval_affine(f, z, w);
    return {{z, w}, std::max(std::abs(check.z - z), std::abs(check.w - w)), false};
}

}  // namespace

AttractingPair attracting_pair(const Blaschke2D& f, double tol) {
    AttractingPair out;
    FixedPointRun interior = iterate_to_fixed_point(f, tol);
    out.interior = interior.point;
    out.interior_residual = interior.residual;
    out.interior_converged = interior.converged;

    // The exterior fixed point of f is the reflection through the torus of the
    // interior fixed point of the zero-conjugated map; in the (1/z, 1/w) chart
    // it reads as the plain conjugate.
    FixedPointRun exterior = iterate_to_fixed_point(conjugated(f), tol);
    out.exterior_chart = {std::conj(exterior.point.first), std::conj(exterior.point.second)};
    out.exterior_residual = exterior.residual;
    out.exterior_converged = exterior.converged;
    return out;
}

const std::vector<double>& DistHistogram::edges() {
    static const std::vector<double> kEdges{0.0,  1e-12, 1e-10, 1e-8, 1e-6, 1e-4,
                                            1e-2, 0.05,  0.1,   0.2,  0.5,  1.0};
    return kEdges;
}

DistHistogram histogram(const std::vector<double>& dist) {
    const auto& edges = DistHistogram::edges();
    DistHistogram h;
    h.counts.assign(edges.size(), 0);  // last bucket catches [1, inf)
    for (double d : dist) {
        std::size_t bucket =
            static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), d) -
                                     edges.begin());
        h.counts[bucket == 0 ? 0 : bucket - 1] += 1;
    }
    return h;
}

BackwardCloud backward_measure_sample(const Blaschke2D& f, TorusPoint x, int depth, int samples,
                                      std::uint64_t seed, BranchRule rule,
                                      const SolverConfig& cfg) {
    if (depth < 1 || samples < 1)
        throw PreconditionViolation("backward sampling needs depth >= 1 and samples >= 1");

    // The solver runs serial inside each sample; the samples themselves are
    // the parallel axis.
    SolverConfig inner = cfg;
    inner.parallel = false;

    BackwardCloud out;
    out.samples = samples;
    out.cloud.depth = depth;
    out.cloud.points.assign(static_cast<std::size_t>(samples), {});
    out.dist.assign(static_cast<std::size_t>(samples), 0.0);

    Complex start_z = std::polar(1.0, kTwoPi * x.x);
    Complex start_w = std::polar(1.0, kTwoPi * x.y);

    long long deficiencies = 0;
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) reduction(+ : deficiencies) if (cfg.parallel)
    for (int s = 0; s < samples; ++s) {
        try {
            SplitMix64 rng(seed ^ (0xa0761d6478bd642fULL * (static_cast<std::uint64_t>(s) + 1)));
            Complex z = start_z, w = start_w;
            for (int step = 0; step < depth; ++step) {
                SolutionSet sols = solve_system(f, z, w, inner);
                if (sols.points.empty()) {
                    ++deficiencies;
                    break;
                }
                std::size_t pick;
                if (rule == BranchRule::MultiplicityWeighted) {
                    // flagged points occupy two slots
                    std::size_t slots = 0;
                    for (bool flag : sols.multiplicity_flags) slots += flag ? 2 : 1;
                    std::size_t slot = static_cast<std::size_t>(rng.next() % slots);
                    pick = 0;
                    for (std::size_t i = 0; i < sols.points.size(); ++i) {
                        std::size_t width = sols.multiplicity_flags[i] ? 2 : 1;
                        if (slot < width) {
                            pick = i;
                            break;
                        }
                        slot -= width;
                    }
                } else {
                    pick = static_cast<std::size_t>(rng.next() % sols.points.size());
                }
                z = sols.points[pick].first;
                w = sols.points[pick].second;
            }
            out.cloud.points[static_cast<std::size_t>(s)] = {z, w};
            out.dist[static_cast<std::size_t>(s)] =
                std::max(std::abs(std::abs(z) - 1.0), std::abs(std::abs(w) - 1.0));
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    out.deficiency_count = deficiencies;
    return out;
}

}  // namespace blaschke2d
