#pragma once
// Sparse homogeneous trivariate polynomials over Gaussian rationals, plus the
// univariate/bivariate helpers backing exact GCD with cancellation.
//
// TriPoly stores terms in descending lex order on exponents (Z, then W, then
// T), so begin() is the lex-leading term; that order also drives exact
// division and GCD normalization.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "blaschke2d/errors.hpp"
#include "blaschke2d/rational.hpp"

namespace blaschke2d {

struct Monomial {
    int i = 0;  // Z exponent
    int j = 0;  // W exponent
    int k = 0;  // T exponent
    int degree() const { return i + j + k; }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.i == b.i && a.j == b.j && a.k == b.k;
    }
};

// Descending lex: leading term first in map iteration.
struct MonomialLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.i != b.i) return a.i > b.i;
        if (a.j != b.j) return a.j > b.j;
        return a.k > b.k;
    }
};

// Abort threshold for runaway expansions (term counts, not bytes).
inline constexpr std::size_t kDefaultTermBudget = 2'000'000;

class TriPoly {
  public:
    using TermMap = std::map<Monomial, GaussianRational, MonomialLexGreater>;

    TriPoly() = default;  // zero polynomial

    static TriPoly zero() { return TriPoly(); }
    static TriPoly constant(const GaussianRational& c, int degree_as_t_power = 0);
    static TriPoly term(const GaussianRational& c, int i, int j, int k);
    // alpha*Z + beta*W + gamma*T
    static TriPoly linear(const GaussianRational& alpha, const GaussianRational& beta,
                          const GaussianRational& gamma);
    static TriPoly from_terms(TermMap terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;  // zero or degree 0
    int degree() const { return degree_; }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    const Monomial& leading_monomial() const;
    const GaussianRational& leading_coefficient() const;

    GaussianRational coefficient(int i, int j, int k) const;

    TriPoly operator-() const;
    friend bool operator==(const TriPoly& a, const TriPoly& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const TriPoly& a, const TriPoly& b) { return !(a == b); }

    std::string to_string() const;  // deterministic, lex order

  private:
    TermMap terms_;
    int degree_ = 0;

    void set_degree_from_terms();
};

// --- arithmetic (all exact; homogeneity checked) ---

TriPoly poly_add(const TriPoly& a, const TriPoly& b);
TriPoly poly_sub(const TriPoly& a, const TriPoly& b);
TriPoly poly_scale(const TriPoly& a, const GaussianRational& c);

// OpenMP-parallel above an internal size threshold; exact arithmetic makes the
// result independent of the schedule.
TriPoly poly_mul(const TriPoly& a, const TriPoly& b,
                 std::size_t max_terms = kDefaultTermBudget);
// Reference implementation, always single-threaded; kept for tests/benchmarks.
TriPoly poly_mul_serial(const TriPoly& a, const TriPoly& b,
                        std::size_t max_terms = kDefaultTermBudget);

TriPoly poly_pow(const TriPoly& a, unsigned e, std::size_t max_terms = kDefaultTermBudget);

GaussianRational poly_eval(const TriPoly& p, const GaussianRational& z,
                           const GaussianRational& w, const GaussianRational& t);

// Exact quotient a/b, or nullopt when b does not divide a.
std::optional<TriPoly> try_divide(const TriPoly& a, const TriPoly& b);

// Largest k with T^k | p (0 for p = 0); and the quotient by T^k.
int t_multiplicity(const TriPoly& p);
TriPoly shift_t(const TriPoly& p, int delta);  // multiply by T^delta (delta may be < 0, exact)

// GCD of homogeneous polynomials, normalized so the lex-leading coefficient
// is 1.  Pre: not both zero.  Strategy: strip the common T power, dehomogenize
// at T = 1, primitive-part pseudo-remainder recursion in W over Q(i)[Z],
// rehomogenize.
TriPoly poly_gcd(const TriPoly& a, const TriPoly& b);

// Divide by the lex-leading coefficient (identity for zero).
TriPoly normalize_leading(const TriPoly& p);

// --- dense univariate polynomials over Gaussian rationals ---

class UniPoly {
  public:
    UniPoly() = default;  // zero
    explicit UniPoly(std::vector<GaussianRational> coeffs);  // lowest degree first
    static UniPoly constant(const GaussianRational& c);
    // Product of (x - roots[i]) terms.
    static UniPoly from_roots(const std::vector<GaussianRational>& roots);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    const GaussianRational& leading() const;
    GaussianRational eval(const GaussianRational& x) const;

    UniPoly derivative() const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly scaled(const GaussianRational& c) const;
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    // Euclidean division (field coefficients): a = q*b + r with deg r < deg b.
    static std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b);

  private:
    std::vector<GaussianRational> coeffs_;
    void trim();
};

// Monic gcd over Q(i); gcd(0,0) = 0.
UniPoly gcd_univariate(const UniPoly& a, const UniPoly& b);

// --- bivariate polynomials as W-coefficient vectors of UniPoly in Z ---
// (used by the GCD recursion and by the exact Jacobian numerator)

using BiPoly = std::vector<UniPoly>;  // index = W power; trimmed so back() is nonzero

BiPoly bipoly_trim(BiPoly p);
bool bipoly_is_zero(const BiPoly& p);
int bipoly_wdeg(const BiPoly& p);  // -1 for zero
BiPoly bipoly_sub(const BiPoly& a, const BiPoly& b);
// a(z,w) evaluated exactly.
GaussianRational bipoly_eval(const BiPoly& p, const GaussianRational& z,
                             const GaussianRational& w);
// Scale so the leading UniPoly (highest W power) is monic; identity for zero.
BiPoly bipoly_normalize(const BiPoly& p);

// Primitive-part PRS gcd over Q(i)[Z][W]; result primitive in W with monic
// content convention.
BiPoly gcd_bivariate(const BiPoly& a, const BiPoly& b);

// Cheap one-sided coprimality certificate: true means a and b provably share
// no nonconstant factor (specialization argument, exact arithmetic); false
// means unknown and the caller should run the full gcd.
bool provably_coprime(const TriPoly& a, const TriPoly& b);

// Homogeneous <-> bivariate transport (pre: T does not divide p for exactness
// of the round trip).
BiPoly dehomogenize(const TriPoly& p);
TriPoly homogenize(const BiPoly& p);  // to the total degree of p

}  // namespace blaschke2d
