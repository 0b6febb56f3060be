#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "blaschke2d/blaschke.hpp"

namespace blaschke2d {

using Complex = std::complex<double>;

// Every numeric tolerance in one place.
struct SolverConfig {
    double trim_rel = 1e-14;         // relative leading-coefficient trim
    double root_residual = 1e-10;    // scaled univariate residual acceptance
    double joint_residual = 1e-8;    // scaled system residual acceptance
    double dedup_radius = 1e-8;      // relative solution merge radius
    double cluster_radius = 1e-5;    // relative root-cluster (multiplicity) radius
    double lc_infinity_ratio = 1e12; // coefficient ratio flagging roots at infinity
    double singular_jacobian = 1e-6; // scaled 2x2 Jacobian threshold for multiplicity flags
    int newton_iters = 12;
    bool parallel = true;            // serial reference path for testing when false
};

// Dense univariate polynomial over complex doubles, lowest degree first.
struct ComplexPoly {
    std::vector<Complex> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    double norm_inf() const;
    Complex eval(Complex x) const;
    double scale_at(double ax) const;  // sum |c_i| max(1,ax)^i, for relative residuals
    ComplexPoly derivative() const;
    ComplexPoly trimmed(double rel) const;
};

ComplexPoly to_complex_poly(const UniPoly& p);

struct RootSet {
    std::vector<Complex> roots;         // cluster representatives
    std::vector<int> multiplicity;      // cluster sizes; sums to the degree
};

// All roots via companion-matrix eigenvalues with Newton polish; close
// approximations are merged into multiplicity clusters.  Throws
// NonConvergence when a root's scaled residual stays above tolerance.
RootSet univariate_roots(const ComplexPoly& p, const SolverConfig& cfg = {});

// Bivariate polynomial: by_w[j] holds the z-coefficients of w^j.
struct BivarPoly {
    std::vector<ComplexPoly> by_w;

    int wdeg() const;
    int zdeg() const;
    ComplexPoly at_z(Complex z0) const;       // restriction, a polynomial in w
    BivarPoly swapped() const;                // exchange the roles of z and w
    double scale_at(double az, double aw) const;
    Complex eval(Complex z, Complex w) const;
    BivarPoly dz() const;                     // partial derivatives
    BivarPoly dw() const;
};

enum class Var { Z, W };

// Resultant eliminating the chosen variable, as a polynomial in the other.
// Sylvester determinants (second argument's rows first) are sampled on a
// scaled circle and interpolated back.  Throws DegenerateSystem when the
// resultant vanishes identically (shared factor).
ComplexPoly resultant_eliminate(const BivarPoly& p1, const BivarPoly& p2, Var eliminate,
                                const SolverConfig& cfg = {});

struct SolutionSet {
    std::vector<std::pair<Complex, Complex>> points;  // lexicographically sorted
    std::vector<double> residuals;                    // scaled max-norm per point
    std::vector<bool> multiplicity_flags;             // near-singular Jacobian
};

/**
 * All affine preimages of a target under f, by clearing denominators,
 * eliminating one variable by resultant, recovering the other along each
 * root, and polishing with a 2D Newton step.  Solutions on denominator
 * zeros are discarded; the count is cross-checked against the opposite
 * elimination order (SolverDeficiency when they disagree).
 */
SolutionSet solve_system(const Blaschke2D& f, Complex target_z, Complex target_w,
                         const SolverConfig& cfg = {});

// The cleared-denominator system (P1, P2) for f(z,w) = (tz, tw); exposed for
// tests and for the resultant degree bound.
std::pair<BivarPoly, BivarPoly> clear_denominators(const Blaschke2D& f, Complex tz, Complex tw);

}  // namespace blaschke2d
