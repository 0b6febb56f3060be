#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "blaschke2d/blaschke.hpp"
#include "blaschke2d/solver.hpp"

namespace blaschke2d {

// Which side of c_plus(N) the topological degree falls on, decided in exact
// integer arithmetic.  CaseI: d_top > c_plus; CaseII: d_top < c_plus;
// CaseIII: d_top = c_plus.
enum class CaseKind { CaseI, CaseII, CaseIII };

const char* case_name(CaseKind kind);

// Classification together with the integer witnesses that decided it.
struct CaseLabel {
    CaseKind kind;
    long long d_top;
    long long trace;      // m + q
    long long det;        // det N
    int char_poly_sign;   // sign of d_top^2 - (m+q) d_top + det N
};

// d_top sits relative to c_plus(N) exactly as the sign of the characteristic
// polynomial p(x) = x^2 - (m+q)x + det N at d_top dictates, with a vertex-side
// test breaking the p > 0 ambiguity.  Never touches floating point.
// Throws InvariantViolation when d_top < det N.
CaseLabel classify_case(const DegreeMatrix& n, long long d_top);

// The exact preimages of (0,0): zeros of A paired with zeros of D, and zeros
// of C paired with zeros of B.  Repetitions are kept (multiset), so the size
// is always mq + np.
std::vector<std::pair<GaussianRational, GaussianRational>> preimages_of_origin(
    const Blaschke2D& f);

struct GenericityReport {
    bool generic = true;
    std::vector<std::string> reasons;  // empty iff generic
};

// A map is generic when its zeros are pairwise distinct within each variable,
// all nonzero, and no zero is a critical point of its own factor.  All three
// tests are exact.
GenericityReport is_generic(const Blaschke2D& f);

enum class DegreeStrategy { ExactGeneric, Numeric, Monomial };

// Topological degree of f on P^2.
//   ExactGeneric: mq + np, valid only when is_generic(f) holds.
//   Monomial:     det N, valid only when every zero is 0.
//   Numeric:      preimage count of a seeded random target (modulus ~ 0.5 per
//                 coordinate, redrawn if within 1e-4 of a sampled critical
//                 value); two independent targets must agree.
// Throws PreconditionViolation when the strategy's requirement fails and
// SolverDeficiency when the two numeric counts disagree.
long long topological_degree(const Blaschke2D& f, DegreeStrategy strategy,
                             std::uint64_t seed = 1, const SolverConfig& cfg = {});

}  // namespace blaschke2d
