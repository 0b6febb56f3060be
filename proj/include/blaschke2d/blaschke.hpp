#pragma once
// Two-dimensional Blaschke products: construction/validation, homogeneous
// lifts with exact cancellation, floating evaluation with indeterminacy
// tagging, and the bit-exact text serialization consumed by the CLI.

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blaschke2d/tri_poly.hpp"

namespace blaschke2d {

struct DegreeMatrix {
    int m = 1, n = 1, p = 1, q = 1;

    long long det() const {
        return static_cast<long long>(m) * q - static_cast<long long>(n) * p;
    }
    long long trace() const { return static_cast<long long>(m) + q; }
    void validate() const;  // throws DegenerateDeterminant / ValidationError

    friend bool operator==(const DegreeMatrix& a, const DegreeMatrix& b) {
        return a.m == b.m && a.n == b.n && a.p == b.p && a.q == b.q;
    }
};

// theta = u / conj(u): surjects onto Gaussian-rational unimodular numbers and
// keeps theta * conj(theta) = 1 exact.
class UnimodularRotation {
  public:
    UnimodularRotation() : seed_(1), value_(1) {}
    explicit UnimodularRotation(const GaussianRational& seed);
    static UnimodularRotation identity() { return UnimodularRotation(); }

    const GaussianRational& seed() const { return seed_; }
    const GaussianRational& value() const { return value_; }

  private:
    GaussianRational seed_;
    GaussianRational value_;
};

// rotation * prod (x - a_i)/(1 - conj(a_i) x); all |a_i| < 1 exactly.
class OneVarBlaschke {
  public:
    OneVarBlaschke() = default;
    OneVarBlaschke(std::vector<GaussianRational> zeros, UnimodularRotation rotation);

    int degree() const { return static_cast<int>(zeros_.size()); }
    const std::vector<GaussianRational>& zeros() const { return zeros_; }
    const UnimodularRotation& rotation() const { return rotation_; }

    UniPoly numerator() const;    // prod (x - a_i), no rotation
    UniPoly denominator() const;  // prod (1 - conj(a_i) x)

    // Exact value rotation * num/den; throws DegenerateConfiguration at poles.
    GaussianRational eval(const GaussianRational& x) const;

  private:
    std::vector<GaussianRational> zeros_;
    UnimodularRotation rotation_;
};

// Precomputed double-precision factored form of the reduced lift; the hot
// path for all numeric dynamics.
struct EvalKernel {
    struct Factor {
        std::complex<double> cz, cw, ct;  // cz*z + cw*w + ct at T = 1
        int mult = 1;
    };
    struct Component {
        std::complex<double> unit{1.0, 0.0};
        std::vector<Factor> factors;
    };
    std::array<Component, 3> comp;

    // values[i] = component value; scales[i] = product of per-factor magnitude
    // bounds, the reference for relative smallness tests.
    void eval(std::complex<double> z, std::complex<double> w,
              std::complex<double> values[3], double scales[3]) const;
};

class Blaschke2D {
  public:
    // theta1 rides on A, theta2 on C; B and D carry identity rotations.
    Blaschke2D(OneVarBlaschke A, OneVarBlaschke B, OneVarBlaschke C, OneVarBlaschke D);

    const OneVarBlaschke& A() const { return A_; }
    const OneVarBlaschke& B() const { return B_; }
    const OneVarBlaschke& C() const { return C_; }
    const OneVarBlaschke& D() const { return D_; }

    DegreeMatrix N() const;
    const GaussianRational& theta1() const { return A_.rotation().value(); }
    const GaussianRational& theta2() const { return C_.rotation().value(); }

    // Concatenated zero collection sigma = (a..., b..., c..., d...).
    std::vector<GaussianRational> sigma() const;
    bool all_zeros_zero() const;

    const EvalKernel& kernel() const { return *kernel_; }

  private:
    OneVarBlaschke A_, B_, C_, D_;
    std::shared_ptr<const EvalKernel> kernel_;
};

Blaschke2D build_map(std::vector<GaussianRational> zeros_a, std::vector<GaussianRational> zeros_b,
                     std::vector<GaussianRational> zeros_c, std::vector<GaussianRational> zeros_d,
                     const GaussianRational& seed1, const GaussianRational& seed2);

// All zeros 0, rotations 1: f(z,w) = (z^m w^n, z^p w^q).
Blaschke2D monomial_map(const DegreeMatrix& N);

// Zeros and rotation seeds conjugated; realizes the exterior map 1/f(1/u,1/v).
Blaschke2D conjugated(const Blaschke2D& f);

// --- homogeneous lift ---

struct FactoredComponent {
    GaussianRational unit{1};
    std::vector<std::pair<TriPoly, int>> factors;  // (normalized factor, multiplicity)
};

struct HomogeneousMap {
    TriPoly F1, F2, F3;
    int degree = 0;
    // Present when the map was produced with factor bookkeeping (lift and
    // factored composition); factors are pairwise coprime across the array.
    std::optional<std::array<FactoredComponent, 3>> factored;

    const TriPoly& component(int idx) const;
};

// Cancel the common factor of three factored components: refine the factor
// set into a pairwise-coprime basis, subtract minimum multiplicities, expand.
// gcd_out (optional) receives the cancelled common factor, normalized.
HomogeneousMap reduce_factored(std::array<FactoredComponent, 3> raw,
                               std::size_t max_terms = kDefaultTermBudget,
                               TriPoly* gcd_out = nullptr);

struct LiftInfo {
    int raw_degree = 0;
    TriPoly gcd;  // cancelled common factor (constant 1 when nothing cancels)
};

// Product-form lift, then exact reduction; reduced degree is d_alg(f).
HomogeneousMap lift(const Blaschke2D& f, std::size_t max_terms = kDefaultTermBudget,
                    LiftInfo* info = nullptr);

// --- floating evaluation ---

struct EvalResult {
    enum class Kind { Finite, Indeterminate, Infinity };
    Kind kind = Kind::Finite;
    std::complex<double> z{}, w{};  // finite value, or [z:w:0] direction at infinity
};

EvalResult eval_affine(const Blaschke2D& f, std::complex<double> z, std::complex<double> w,
                       double tol = 1e-9);

// --- serialization (bit-exact round trip) ---

// Wire form of one Gaussian rational: "re_num re_den im_num im_den", each an
// arbitrary-precision integer.  parse_rational_fields throws
// std::invalid_argument on malformed integers or zero denominators; callers
// wrap that in ParseError with their own line information.
std::string rational_fields(const GaussianRational& g);
GaussianRational parse_rational_fields(const std::string& re_num, const std::string& re_den,
                                       const std::string& im_num, const std::string& im_den);

std::string serialize_map(const Blaschke2D& f);
Blaschke2D parse_map(const std::string& text);

}  // namespace blaschke2d
