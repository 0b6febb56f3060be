#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "blaschke2d/blaschke.hpp"
#include "blaschke2d/solver.hpp"

namespace blaschke2d {

// Angle coordinates on the unit torus: the point (e^{2pi i x}, e^{2pi i y}).
struct TorusPoint {
    double x = 0.0;
    double y = 0.0;
};

// Coordinates reduced mod 1 into [0, 1).
TorusPoint reduced(TorusPoint pt);

// Flat-metric distance on the torus (each coordinate wrapped to [-1/2, 1/2]).
double torus_distance(TorusPoint a, TorusPoint b);

// One application of f restricted to the torus; output moduli are renormalized
// by keeping only the image angles.  Maps with every zero at the origin take
// the exact linear route (x, y) -> N (x, y) plus the rotation offsets.
TorusPoint torus_step(const Blaschke2D& f, TorusPoint pt);

// Bulk version of torus_step over a whole cloud, in place.  `parallel` selects
// the OpenMP kernel; the serial path is the reference the tests compare against.
void map_points(const Blaschke2D& f, std::vector<TorusPoint>& pts, bool parallel);

// Winding numbers of f^n composed with the two generator loops (w = 1 and
// z = 1 circles), found by continuous argument lifting with adaptive
// subdivision.  Equals N^n.  Throws LiftDiscontinuity when a quarter-turn
// jump survives the finest subdivision.
DegreeMatrix homology_action(const Blaschke2D& f, int n);

// Entropy estimate from the growth of the curve f^n(gamma_1): the polyline is
// refined until adjacent images are closer than 0.01, and the slope of
// log(length) over the last third of iterate levels is returned.
// Throws RefinementBudget when a level needs more points than the budget.
double curve_growth_entropy(const Blaschke2D& f, int n_max, int samples);

// The interior/exterior (semi-)attracting fixed points.  `interior` is e in
// the closed bidisc; `exterior_chart` expresses e' in the coordinates
// (1/z, 1/w), so it also lands in the closed bidisc.  When an orbit fails to
// settle within the iteration budget the point is reported with its flag
// cleared instead of raising, covering the neutral case.
struct AttractingPair {
    std::pair<Complex, Complex> interior;
    std::pair<Complex, Complex> exterior_chart;
    double interior_residual = 0.0;
    double exterior_residual = 0.0;
    bool interior_converged = false;
    bool exterior_converged = false;
};
AttractingPair attracting_pair(const Blaschke2D& f, double tol);

// Endpoints of sampled backward orbits, approximating the pullback measure.
struct PointCloud {
    std::vector<std::pair<Complex, Complex>> points;
    int depth = 0;
    double weight() const { return points.empty() ? 0.0 : 1.0 / points.size(); }
};

// Fixed histogram of the distance-to-torus statistic, suitable for the JSON
// summary: counts[i] holds the points with dist in [edges[i], edges[i+1]).
struct DistHistogram {
    static const std::vector<double>& edges();
    std::vector<long long> counts;
};

struct BackwardCloud {
    PointCloud cloud;
    std::vector<double> dist;  // max(| |z|-1 |, | |w|-1 |) per endpoint
    long long deficiency_count = 0;  // backward steps that found no preimage
    int samples = 0;
};

enum class BranchRule {
    Uniform,               // every preimage equally likely
    MultiplicityWeighted,  // points flagged as multiple count twice
};

// Samples independent backward orbits: `depth` pullback steps per sample,
// choosing one preimage per step by `rule`.  Deterministic for a fixed seed
// regardless of thread schedule (each sample derives its own generator).
BackwardCloud backward_measure_sample(const Blaschke2D& f, TorusPoint x, int depth, int samples,
                                      std::uint64_t seed, BranchRule rule = BranchRule::Uniform,
                                      const SolverConfig& cfg = {});

DistHistogram histogram(const std::vector<double>& dist);

}  // namespace blaschke2d
