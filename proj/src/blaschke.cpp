#include "blaschke2d/blaschke.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace blaschke2d {

void DegreeMatrix::validate() const {
    if (m < 1 || n < 1 || p < 1 || q < 1)
        throw ValidationError("degree matrix entries must be >= 1");
    if (det() <= 0)
        throw DegenerateDeterminant("det N = " + std::to_string(det()) + " must be positive");
}

UnimodularRotation::UnimodularRotation(const GaussianRational& seed) : seed_(seed) {
    if (seed.is_zero()) throw ValidationError("rotation seed must be nonzero");
    value_ = seed / seed.conj();
}

OneVarBlaschke::OneVarBlaschke(std::vector<GaussianRational> zeros, UnimodularRotation rotation)
    : zeros_(std::move(zeros)), rotation_(std::move(rotation)) {
    for (const auto& z : zeros_) {
        if (z.norm2() >= 1)
            throw ZeroOutsideDisc("zero " + to_string(z) + " has |z|^2 = " + to_string(z.norm2()) +
                                  " >= 1");
    }
}

UniPoly OneVarBlaschke::numerator() const { return UniPoly::from_roots(zeros_); }

UniPoly OneVarBlaschke::denominator() const {
    UniPoly p = UniPoly::constant(GaussianRational(1));
    for (const auto& a : zeros_) p = p * UniPoly({GaussianRational(1), -a.conj()});
    return p;
}

GaussianRational OneVarBlaschke::eval(const GaussianRational& x) const {
    GaussianRational num(1), den(1);
    for (const auto& a : zeros_) {
        num *= x - a;
        den *= GaussianRational(1) - a.conj() * x;
    }
    if (den.is_zero())
        throw DegenerateConfiguration("evaluation at a pole of a one-variable factor");
    return rotation_.value() * num / den;
}

void EvalKernel::eval(std::complex<double> z, std::complex<double> w,
                      std::complex<double> values[3], double scales[3]) const {
    double az = std::abs(z), aw = std::abs(w);
    for (int c = 0; c < 3; ++c) {
        std::complex<double> v = comp[c].unit;
        double s = std::abs(comp[c].unit);
        for (const auto& fac : comp[c].factors) {
            std::complex<double> fv = fac.cz * z + fac.cw * w + fac.ct;
            double fs = std::abs(fac.cz) * az + std::abs(fac.cw) * aw + std::abs(fac.ct);
            for (int e = 0; e < fac.mult; ++e) {
                v *= fv;
                s *= fs;
            }
        }
        values[c] = v;
        scales[c] = s;
    }
}

namespace {

// Raw product-form components of the lift (factor lists, nothing expanded).
std::array<FactoredComponent, 3> raw_lift_factors(const Blaschke2D& f) {
    auto zero_factor_z = [](const GaussianRational& a) {  // Z - a T
        return TriPoly::linear(GaussianRational(1), GaussianRational(), -a);
    };
    auto zero_factor_w = [](const GaussianRational& b) {  // W - b T
        return TriPoly::linear(GaussianRational(), GaussianRational(1), -b);
    };
    auto pole_factor_z = [](const GaussianRational& a) {  // T - conj(a) Z
        return TriPoly::linear(-a.conj(), GaussianRational(), GaussianRational(1));
    };
    auto pole_factor_w = [](const GaussianRational& b) {  // T - conj(b) W
        return TriPoly::linear(GaussianRational(), -b.conj(), GaussianRational(1));
    };

    FactoredComponent c1, c2, c3;
    c1.unit = f.theta1();
    c2.unit = f.theta2();
    for (const auto& a : f.A().zeros()) c1.factors.emplace_back(zero_factor_z(a), 1);
    for (const auto& b : f.B().zeros()) c1.factors.emplace_back(zero_factor_w(b), 1);
    for (const auto& c : f.C().zeros()) c1.factors.emplace_back(pole_factor_z(c), 1);
    for (const auto& d : f.D().zeros()) c1.factors.emplace_back(pole_factor_w(d), 1);

    for (const auto& c : f.C().zeros()) c2.factors.emplace_back(zero_factor_z(c), 1);
    for (const auto& d : f.D().zeros()) c2.factors.emplace_back(zero_factor_w(d), 1);
    for (const auto& a : f.A().zeros()) c2.factors.emplace_back(pole_factor_z(a), 1);
    for (const auto& b : f.B().zeros()) c2.factors.emplace_back(pole_factor_w(b), 1);

    for (const auto& a : f.A().zeros()) c3.factors.emplace_back(pole_factor_z(a), 1);
    for (const auto& b : f.B().zeros()) c3.factors.emplace_back(pole_factor_w(b), 1);
    for (const auto& c : f.C().zeros()) c3.factors.emplace_back(pole_factor_z(c), 1);
    for (const auto& d : f.D().zeros()) c3.factors.emplace_back(pole_factor_w(d), 1);
    return {std::move(c1), std::move(c2), std::move(c3)};
}

struct ReducedFactors {
    std::vector<TriPoly> basis;  // pairwise coprime, lex-leading coefficient 1
    std::array<GaussianRational, 3> units;
    std::array<std::vector<int>, 3> mult;  // reduced multiplicities per component
    std::vector<int> gcd_mult;             // cancelled minimum multiplicities
};

// Refine a list of polynomials into a pairwise-coprime basis.  Splits keep
// every input expressible as a product of basis elements.
std::vector<TriPoly> gcd_free_basis(std::deque<TriPoly> work) {
    std::vector<TriPoly> basis;
    while (!work.empty()) {
        TriPoly f = std::move(work.front());
        work.pop_front();
        if (f.is_constant()) continue;
        bool requeued = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (provably_coprime(f, basis[i])) continue;
            TriPoly g = poly_gcd(f, basis[i]);
            if (g.is_constant()) continue;
            if (g == basis[i]) {
                // basis[i] divides f: strip every copy and keep scanning.
                while (true) {
                    auto quot = try_divide(f, basis[i]);
                    if (!quot) break;
                    f = std::move(*quot);
                }
                if (f.is_constant()) break;
            } else {
                // Proper split: replace basis[i] by g and its cofactor.
                TriPoly cof = *try_divide(basis[i], g);
                basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
                work.push_back(std::move(g));
                work.push_back(normalize_leading(cof));
                work.push_back(std::move(f));
                requeued = true;
                break;
            }
        }
        if (!requeued && !f.is_constant()) basis.push_back(std::move(f));
    }
    return basis;
}

// Exponent vector of poly over the pairwise-coprime basis.
std::vector<int> decompose_over_basis(TriPoly poly, const std::vector<TriPoly>& basis) {
    std::vector<int> exps(basis.size(), 0);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        while (true) {
            auto quot = try_divide(poly, basis[b]);
            if (!quot) break;
            poly = std::move(*quot);
            ++exps[b];
        }
        if (poly.is_constant()) break;
    }
    if (!poly.is_constant())
        throw std::logic_error("factor does not decompose over the refined basis");
    return exps;
}

ReducedFactors reduce_multiplicities(std::array<FactoredComponent, 3> raw) {
    ReducedFactors out;
    // Normalize factors, folding leading coefficients into the units, and
    // merge duplicates within each component.
    struct Distinct {
        TriPoly poly;
        std::array<int, 3> mult{0, 0, 0};
    };
    std::vector<Distinct> distinct;
    for (int c = 0; c < 3; ++c) {
        out.units[c] = raw[c].unit;
        for (auto& [poly, mult] : raw[c].factors) {
            if (poly.is_zero()) throw InvariantViolation("zero factor in factored component");
            GaussianRational lc = poly.leading_coefficient();
            if (!lc.is_one()) out.units[c] *= gaussian_pow(lc, static_cast<unsigned>(mult));
            TriPoly norm = normalize_leading(poly);
            auto it = std::find_if(distinct.begin(), distinct.end(),
                                   [&](const Distinct& d) { return d.poly == norm; });
            if (it == distinct.end()) {
                distinct.push_back({std::move(norm), {0, 0, 0}});
                it = std::prev(distinct.end());
            }
            it->mult[c] += mult;
        }
    }

    std::deque<TriPoly> work;
    for (const auto& d : distinct) work.push_back(d.poly);
    out.basis = gcd_free_basis(std::move(work));

    for (int c = 0; c < 3; ++c) out.mult[c].assign(out.basis.size(), 0);
    for (const auto& d : distinct) {
        std::vector<int> exps = decompose_over_basis(d.poly, out.basis);
        for (std::size_t b = 0; b < out.basis.size(); ++b) {
            if (exps[b] == 0) continue;
            for (int c = 0; c < 3; ++c) out.mult[c][b] += exps[b] * d.mult[c];
        }
    }

    out.gcd_mult.assign(out.basis.size(), 0);
    for (std::size_t b = 0; b < out.basis.size(); ++b) {
        int mn = std::min({out.mult[0][b], out.mult[1][b], out.mult[2][b]});
        out.gcd_mult[b] = mn;
        for (int c = 0; c < 3; ++c) out.mult[c][b] -= mn;
    }
    return out;
}

TriPoly expand_product(const GaussianRational& unit, const std::vector<TriPoly>& basis,
                       const std::vector<int>& mult, std::size_t max_terms) {
    TriPoly acc = TriPoly::constant(unit);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        if (mult[b] == 0) continue;
        acc = poly_mul(acc, poly_pow(basis[b], static_cast<unsigned>(mult[b]), max_terms),
                       max_terms);
    }
    return acc;
}

}  // namespace

HomogeneousMap reduce_factored(std::array<FactoredComponent, 3> raw, std::size_t max_terms,
                               TriPoly* gcd_out) {
    ReducedFactors red = reduce_multiplicities(std::move(raw));

    HomogeneousMap map;
    map.F1 = expand_product(red.units[0], red.basis, red.mult[0], max_terms);
    map.F2 = expand_product(red.units[1], red.basis, red.mult[1], max_terms);
    map.F3 = expand_product(red.units[2], red.basis, red.mult[2], max_terms);
    if (map.F1.degree() != map.F2.degree() || map.F1.degree() != map.F3.degree())
        throw InvariantViolation("reduced components have unequal degrees");
    map.degree = map.F1.degree();

    std::array<FactoredComponent, 3> kept;
    for (int c = 0; c < 3; ++c) {
        kept[c].unit = red.units[c];
        for (std::size_t b = 0; b < red.basis.size(); ++b)
            if (red.mult[c][b] > 0) kept[c].factors.emplace_back(red.basis[b], red.mult[c][b]);
    }
    map.factored = std::move(kept);

    if (gcd_out)
        *gcd_out = expand_product(GaussianRational(1), red.basis, red.gcd_mult, max_terms);
    return map;
}

const TriPoly& HomogeneousMap::component(int idx) const {
    switch (idx) {
        case 0: return F1;
        case 1: return F2;
        case 2: return F3;
        default: throw std::logic_error("component index out of range");
    }
}

Blaschke2D::Blaschke2D(OneVarBlaschke A, OneVarBlaschke B, OneVarBlaschke C, OneVarBlaschke D)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
    if (A_.degree() == 0 || B_.degree() == 0 || C_.degree() == 0 || D_.degree() == 0)
        throw EmptyFactor("all four factor zero lists must be nonempty");
    N().validate();

    // The evaluation kernel uses the *reduced* factored lift so degenerate
    // families (shared zeros) evaluate like the underlying rational map.
    ReducedFactors red = reduce_multiplicities(raw_lift_factors(*this));
    auto kernel = std::make_shared<EvalKernel>();
    for (int c = 0; c < 3; ++c) {
        kernel->comp[c].unit = red.units[c].to_complex();
        for (std::size_t b = 0; b < red.basis.size(); ++b) {
            if (red.mult[c][b] == 0) continue;
            const TriPoly& lin = red.basis[b];
            if (lin.degree() != 1)
                throw std::logic_error("lift factor basis is not linear");
            EvalKernel::Factor fac;
            fac.cz = lin.coefficient(1, 0, 0).to_complex();
            fac.cw = lin.coefficient(0, 1, 0).to_complex();
            fac.ct = lin.coefficient(0, 0, 1).to_complex();
            fac.mult = red.mult[c][b];
            kernel->comp[c].factors.push_back(fac);
        }
    }
    kernel_ = std::move(kernel);
}

DegreeMatrix Blaschke2D::N() const {
    return DegreeMatrix{A_.degree(), B_.degree(), C_.degree(), D_.degree()};
}

std::vector<GaussianRational> Blaschke2D::sigma() const {
    std::vector<GaussianRational> all;
    for (const auto* part : {&A_, &B_, &C_, &D_})
        all.insert(all.end(), part->zeros().begin(), part->zeros().end());
    return all;
}

bool Blaschke2D::all_zeros_zero() const {
    for (const auto& z : sigma())
        if (!z.is_zero()) return false;
    return true;
}

Blaschke2D build_map(std::vector<GaussianRational> zeros_a, std::vector<GaussianRational> zeros_b,
                     std::vector<GaussianRational> zeros_c, std::vector<GaussianRational> zeros_d,
                     const GaussianRational& seed1, const GaussianRational& seed2) {
    return Blaschke2D(OneVarBlaschke(std::move(zeros_a), UnimodularRotation(seed1)),
                      OneVarBlaschke(std::move(zeros_b), UnimodularRotation::identity()),
                      OneVarBlaschke(std::move(zeros_c), UnimodularRotation(seed2)),
                      OneVarBlaschke(std::move(zeros_d), UnimodularRotation::identity()));
}

Blaschke2D monomial_map(const DegreeMatrix& N) {
    N.validate();
    auto zeros = [](int count) { return std::vector<GaussianRational>(count); };
    return build_map(zeros(N.m), zeros(N.n), zeros(N.p), zeros(N.q), GaussianRational(1),
                     GaussianRational(1));
}

Blaschke2D conjugated(const Blaschke2D& f) {
    auto conj_list = [](const std::vector<GaussianRational>& zs) {
        std::vector<GaussianRational> out;
        out.reserve(zs.size());
        for (const auto& z : zs) out.push_back(z.conj());
        return out;
    };
    return build_map(conj_list(f.A().zeros()), conj_list(f.B().zeros()),
                     conj_list(f.C().zeros()), conj_list(f.D().zeros()),
                     f.A().rotation().seed().conj(), f.C().rotation().seed().conj());
}

HomogeneousMap lift(const Blaschke2D& f, std::size_t max_terms, LiftInfo* info) {
    DegreeMatrix N = f.N();
    TriPoly gcd;
    HomogeneousMap map = reduce_factored(raw_lift_factors(f), max_terms, &gcd);
    if (info) {
        info->raw_degree = N.m + N.n + N.p + N.q;
        info->gcd = gcd;
    }
    return map;
}

EvalResult eval_affine(const Blaschke2D& f, std::complex<double> z, std::complex<double> w,
                       double tol) {
    std::complex<double> values[3];
    double scales[3];
    f.kernel().eval(z, w, values, scales);

    auto small = [&](int i) { return std::abs(values[i]) <= tol * std::max(scales[i], 1e-300); };
    EvalResult res;
    if (small(0) && small(1) && small(2)) {
        res.kind = EvalResult::Kind::Indeterminate;
        return res;
    }
    if (small(2)) {
        res.kind = EvalResult::Kind::Infinity;
        double norm = std::max(std::abs(values[0]), std::abs(values[1]));
        res.z = values[0] / norm;
        res.w = values[1] / norm;
        return res;
    }
    res.kind = EvalResult::Kind::Finite;
    res.z = values[0] / values[2];
    res.w = values[1] / values[2];
    return res;
}

// --- serialization ---

namespace {
void append_zero_line(std::ostringstream& out, const char* key, const GaussianRational& g) {
    out << key << " " << rational_fields(g) << "\n";
}
}  // namespace

std::string rational_fields(const GaussianRational& g) {
    return g.re.get_num().get_str() + " " + g.re.get_den().get_str() + " " +
           g.im.get_num().get_str() + " " + g.im.get_den().get_str();
}

GaussianRational parse_rational_fields(const std::string& re_num, const std::string& re_den,
                                       const std::string& im_num, const std::string& im_den) {
    mpz_class ren(re_num), red(re_den), imn(im_num), imd(im_den);
    if (red == 0 || imd == 0) throw std::invalid_argument("zero denominator");
    Rational re(ren, red), im(imn, imd);
    re.canonicalize();
    im.canonicalize();
    return GaussianRational(re, im);
}

std::string serialize_map(const Blaschke2D& f) {
    std::ostringstream out;
    for (const auto& z : f.A().zeros()) append_zero_line(out, "a", z);
    for (const auto& z : f.B().zeros()) append_zero_line(out, "b", z);
    for (const auto& z : f.C().zeros()) append_zero_line(out, "c", z);
    for (const auto& z : f.D().zeros()) append_zero_line(out, "d", z);
    append_zero_line(out, "u1", f.A().rotation().seed());
    append_zero_line(out, "u2", f.C().rotation().seed());
    return out.str();
}

Blaschke2D parse_map(const std::string& text) {
    std::vector<GaussianRational> a, b, c, d;
    std::optional<GaussianRational> u1, u2;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;  // blank / comment-only line
        std::string sn, sd, tn, td;
        if (!(ls >> sn >> sd >> tn >> td))
            throw ParseError("expected four integers after '" + key + "'", lineno);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing tokens after '" + key + "' entry", lineno);
        GaussianRational g;
        try {
            g = parse_rational_fields(sn, sd, tn, td);
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad rational pair: ") + e.what(), lineno);
        }
        if (key == "a") a.push_back(g);
        else if (key == "b") b.push_back(g);
        else if (key == "c") c.push_back(g);
        else if (key == "d") d.push_back(g);
        else if (key == "u1") {
            if (u1) throw ParseError("duplicate u1", lineno);
            u1 = g;
        } else if (key == "u2") {
            if (u2) throw ParseError("duplicate u2", lineno);
            u2 = g;
        } else {
            throw ParseError("unknown key '" + key + "'", lineno);
        }
    }
    return build_map(std::move(a), std::move(b), std::move(c), std::move(d),
                     u1.value_or(GaussianRational(1)), u2.value_or(GaussianRational(1)));
}

}  // namespace blaschke2d
