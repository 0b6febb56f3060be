#pragma once

#include <string>
#include <vector>

#include "blaschke2d/blaschke.hpp"

namespace blaschke2d {

/**
 * Action of pullback on the three divisor classes that generate the relevant
 * part of cohomology after blowing up the two points at infinity: the strict
 * transform of a vertical line and the two exceptional classes.
 */
struct PullbackMatrix {
    long long a[3][3] = {};

    std::array<long long, 3> apply(const std::array<long long, 3>& v) const;
};

PullbackMatrix pullback_matrix(const DegreeMatrix& N);

// det(xI - M) = x^3 + c2 x^2 + c1 x + c0, coefficients computed from the
// matrix entries (trace, principal-minor sum, determinant).
struct CharPoly {
    long long c2 = 0, c1 = 0, c0 = 0;
};
CharPoly char_poly(const PullbackMatrix& M);

// First component of M^n applied to the class of a vertical line, which
// pulls back to (1,1,0) in the blown-up basis.  Entry k (0-based) is the
// predicted algebraic degree of the (k+1)-st iterate.
std::vector<long long> predicted_degrees(const DegreeMatrix& N, int count);

// Degrees of the iterates of the monomial map with exponent matrix N:
// the largest row sum of N^k.
std::vector<long long> monomial_degrees(const DegreeMatrix& N, int count);

struct DegreeSequence {
    std::vector<long long> degrees;  // degrees of the reduced iterate lifts
    bool truncated = false;          // true if the term budget cut it short
};

/**
 * Degrees of the reduced homogeneous lifts of f, f^2, ..., f^count, computed
 * by composing the factored lift onto the previous iterate and cancelling
 * common factors exactly.  A blown term budget marks the sequence truncated
 * rather than failing.
 */
DegreeSequence degree_sequence(const Blaschke2D& f, int count,
                               std::size_t max_terms = kDefaultTermBudget);

// One composition step f o H with exact cancellation, via the product
// structure of f's lift (each component of the composite is a product of
// composed linear forms, so common factors are found before expansion).
HomogeneousMap compose_reduce(const Blaschke2D& f, const HomogeneousMap& H,
                              std::size_t max_terms = kDefaultTermBudget);

// Reference path: substitute H into the expanded components of g, then
// divide out the full gcd.  Much slower; kept as an oracle for tests.
HomogeneousMap compose_reduce_generic(const HomogeneousMap& g, const HomogeneousMap& H,
                                      std::size_t max_terms = kDefaultTermBudget);

// Quadratic surd (add + sqrt(radicand)) / div, printed exactly; collapses to
// a rational when the radicand is a perfect square.
struct Surd {
    long long add = 0;
    long long radicand = 0;
    long long div = 1;

    double value() const;
    std::string to_string() const;
};

// Largest root of x^2 - (m+q) x + det N: the expected degree growth rate.
Surd c_plus(const DegreeMatrix& N);

struct Lambda1Estimate {
    double ratio = 0.0;  // d_k / d_{k-1}
    double root = 0.0;   // d_k^(1/k)
};
Lambda1Estimate estimate_lambda1(const std::vector<long long>& degrees);

}  // namespace blaschke2d
