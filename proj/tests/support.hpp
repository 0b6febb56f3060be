#pragma once
// Shared fixtures: rational literals and the handful of maps the suites keep
// coming back to.

#include "blaschke2d/blaschke.hpp"

namespace testsupport {

using namespace blaschke2d;

inline Rational Q(long n, long d = 1) { return Rational(n, d); }
inline GaussianRational G(long n, long d = 1) { return GaussianRational(Q(n, d)); }
inline GaussianRational Gi(long rn, long rd, long in, long id) {
    return GaussianRational(Q(rn, rd), Q(in, id));
}

// Generic degree matrix [[1,1],[1,2]]: distinct nonzero zeros, identity
// rotations.  Topological degree mq + np = 3, degree sequence 5, 13, 34.
inline Blaschke2D generic_12() {
    return build_map({G(1, 2)}, {G(1, 3)}, {G(1, 5)}, {Gi(0, 1, 1, 4), G(1, 7)}, G(1), G(1));
}

// Heavily repeated zeros with one shared across factors: N = [[5,2],[2,1]],
// lift degree drops 10 -> 8 and the preimage count drops 9 -> 5.
inline Blaschke2D shared_zero_52() {
    GaussianRational a = G(1, 4), b = G(1, 3), c = G(1, 2);
    return build_map({a, a, a, a, a}, {b, b}, {a, c}, {b}, Gi(3, 1, 1, 1), Gi(2, 1, -1, 1));
}

// Same zero set with identity rotations; exercises the best-effort
// indeterminacy enumeration and the coincident-zero pole covers.
inline Blaschke2D shared_zero_52_plain() {
    GaussianRational a = G(1, 4), b = G(1, 3), c = G(1, 2);
    return build_map({a, a, a, a, a}, {b, b}, {a, c}, {b}, G(1), G(1));
}

// All five zero moduli at most 1/25: a small perturbation of the monomial
// map with N = [[1,1],[1,2]], used for the off-torus backward statistics.
inline Blaschke2D small_zero_12() {
    return build_map({G(1, 25)}, {Gi(0, 1, 1, 30)}, {G(-1, 40)}, {G(1, 50), G(-1, 60)}, G(1),
                     G(1));
}

// Small-zero perturbation of the N = [[2,1],[1,1]] monomial map, for the
// entropy comparison against log((3+sqrt(5))/2).
inline Blaschke2D small_zero_21() {
    return build_map({G(1, 25), G(-1, 30)}, {Gi(0, 1, 1, 40)}, {G(1, 35)}, {G(-1, 50)}, G(1),
                     G(1));
}

}  // namespace testsupport
