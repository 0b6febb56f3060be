#pragma once

#include <string>
#include <vector>

#include "blaschke2d/blaschke.hpp"

namespace blaschke2d {

enum class LineKind {
    ZeroOfA,
    PoleOfA,
    ZeroOfB,
    PoleOfB,
    ZeroOfC,
    PoleOfC,
    ZeroOfD,
    PoleOfD,
    Infinity,
};

const char* line_kind_name(LineKind kind);

struct ProjLine {
    LineKind kind;
    TriPoly defining;            // linear homogeneous polynomial cutting the line
    GaussianRational parameter;  // the zero it came from (unused for Infinity)
    bool degenerate = false;     // zero at the origin: line collapses onto an
                                 // axis (zero lines) or to infinity (pole lines)
};

// The 2(m+n+p+q) zero/pole lines plus the line at infinity, tagged by kind.
std::vector<ProjLine> line_arrangement(const Blaschke2D& f);

struct AffinePoint {
    GaussianRational z, w;
};
bool operator==(const AffinePoint& a, const AffinePoint& b);
bool operator<(const AffinePoint& a, const AffinePoint& b);  // lexicographic

struct IndetSet {
    std::vector<AffinePoint> finite_points;  // sorted, deduplicated
    bool includes_infinite_pair = true;      // [1:0:0] and [0:1:0] always blow up
    std::string warning;                     // set for degenerate configurations
};

/**
 * Exact indeterminacy points: intersections of zero lines of one component
 * with pole lines of the other, and of pole lines across the two components.
 * Every returned point is verified to annihilate all three reduced lift
 * components exactly.  Repeated or zero zeros trigger best-effort
 * enumeration (candidates failing the vanishing check are dropped) plus a
 * warning instead of an error.
 */
IndetSet indeterminacy_points(const Blaschke2D& f);

/**
 * Exact numerator and denominator of the Jacobian determinant
 * A'(z)B(w)C(z)D'(w) - A(z)B'(w)C'(z)D(w).  The critical set of f (away
 * from poles) is the vanishing locus of the numerator.
 */
struct CriticalLocus {
    BiPoly numerator;  // W-power-indexed Z-coefficient polynomials
    UniPoly den_z;     // (Q_A Q_C)(z)
    UniPoly den_w;     // (Q_B Q_D)(w)

    GaussianRational eval_numerator(const GaussianRational& z, const GaussianRational& w) const;
    // Full Jacobian value; throws DegenerateConfiguration on a pole.
    GaussianRational eval(const GaussianRational& z, const GaussianRational& w) const;
};
CriticalLocus critical_jacobian(const Blaschke2D& f);

// One-variable rational map with exact coefficients; degree and
// non-constancy are decidable exactly.
struct OneVarRational {
    GaussianRational scale{1};
    UniPoly num;  // monic product over the defining zeros
    UniPoly den;

    int degree() const;
    bool is_constant() const;
    GaussianRational eval(const GaussianRational& x) const;
    GaussianRational derivative(const GaussianRational& x) const;
};

// Components of the continuous extension over an exceptional divisor,
// parameterized by the surviving affine coordinate.
struct ExtensionPair {
    OneVarRational h1, h2;
};

struct ExceptionalMaps {
    ExtensionPair z_infinity;  // over the divisor replacing [1:0:0]
    ExtensionPair w_infinity;  // over the divisor replacing [0:1:0]
};

// Throws ZeroAtOrigin when a required zero sits at 0 (the limit formula
// needs its reciprocal).
ExceptionalMaps exceptional_extension(const Blaschke2D& f);

struct PoleLineCover {
    OneVarRational map;
    int degree = 0;
    char variable = 'w';  // coordinate parameterizing the line
};

// The covering map a pole line induces on the exceptional divisor it is
// collapsed to, with its degree (q, p, n, m for pole lines of A, B, C, D).
// Throws CoincidentZeros when a shared zero makes the degree drop, and
// PreconditionViolation if the line is not a pole line.
PoleLineCover pole_line_cover(const Blaschke2D& f, const ProjLine& line);

}  // namespace blaschke2d
