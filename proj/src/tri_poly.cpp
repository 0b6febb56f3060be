#include "blaschke2d/tri_poly.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>

namespace blaschke2d {

namespace {
// Below this many coefficient products the parallel path is pure overhead.
constexpr std::size_t kParallelPairThreshold = 1u << 14;

void check_budget(std::size_t n, std::size_t max_terms) {
    if (n > max_terms)
        throw ResourceBudget("polynomial term count " + std::to_string(n) +
                             " exceeds budget " + std::to_string(max_terms));
}
}  // namespace

void TriPoly::set_degree_from_terms() {
    if (terms_.empty()) {
        degree_ = 0;
        return;
    }
    degree_ = terms_.begin()->first.degree();
    for (const auto& [mono, coeff] : terms_) {
        if (mono.degree() != degree_)
            throw InvariantViolation("non-homogeneous term map: degree " +
                                     std::to_string(mono.degree()) + " vs " +
                                     std::to_string(degree_));
        if (coeff.is_zero())
            throw InvariantViolation("zero coefficient stored in term map");
    }
}

TriPoly TriPoly::constant(const GaussianRational& c, int degree_as_t_power) {
    return term(c, 0, 0, degree_as_t_power);
}

TriPoly TriPoly::term(const GaussianRational& c, int i, int j, int k) {
    TriPoly p;
    if (!c.is_zero()) {
        p.terms_.emplace(Monomial{i, j, k}, c);
        p.degree_ = i + j + k;
    }
    return p;
}

TriPoly TriPoly::linear(const GaussianRational& alpha, const GaussianRational& beta,
                        const GaussianRational& gamma) {
    TriPoly p;
    if (!alpha.is_zero()) p.terms_.emplace(Monomial{1, 0, 0}, alpha);
    if (!beta.is_zero()) p.terms_.emplace(Monomial{0, 1, 0}, beta);
    if (!gamma.is_zero()) p.terms_.emplace(Monomial{0, 0, 1}, gamma);
    p.degree_ = p.terms_.empty() ? 0 : 1;
    return p;
}

TriPoly TriPoly::from_terms(TermMap terms) {
    TriPoly p;
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second.is_zero())
            it = terms.erase(it);
        else
            ++it;
    }
    p.terms_ = std::move(terms);
    p.set_degree_from_terms();
    return p;
}

bool TriPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree_ == 0);
}

const Monomial& TriPoly::leading_monomial() const {
    if (terms_.empty()) throw std::logic_error("leading_monomial of zero polynomial");
    return terms_.begin()->first;
}

const GaussianRational& TriPoly::leading_coefficient() const {
    if (terms_.empty()) throw std::logic_error("leading_coefficient of zero polynomial");
    return terms_.begin()->second;
}

GaussianRational TriPoly::coefficient(int i, int j, int k) const {
    auto it = terms_.find(Monomial{i, j, k});
    return it == terms_.end() ? GaussianRational() : it->second;
}

TriPoly TriPoly::operator-() const {
    TriPoly p;
    p.degree_ = degree_;
    for (const auto& [mono, coeff] : terms_) p.terms_.emplace(mono, -coeff);
    return p;
}

std::string TriPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << blaschke2d::to_string(coeff) << ")";
        if (mono.i) out << "*Z^" << mono.i;
        if (mono.j) out << "*W^" << mono.j;
        if (mono.k) out << "*T^" << mono.k;
    }
    return out.str();
}

TriPoly poly_add(const TriPoly& a, const TriPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() != b.degree())
        throw InvariantViolation("adding homogeneous polynomials of different degrees");
    TriPoly::TermMap out = a.terms();
    for (const auto& [mono, coeff] : b.terms()) {
        auto [it, inserted] = out.emplace(mono, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return TriPoly::from_terms(std::move(out));
}

TriPoly poly_sub(const TriPoly& a, const TriPoly& b) { return poly_add(a, -b); }

TriPoly poly_scale(const TriPoly& a, const GaussianRational& c) {
    if (c.is_zero()) return TriPoly::zero();
    TriPoly::TermMap out;
    for (const auto& [mono, coeff] : a.terms()) out.emplace(mono, coeff * c);
    return TriPoly::from_terms(std::move(out));
}

namespace {
// Multiply the term range [first, last) of a by all of b into acc.
void accumulate_products(TriPoly::TermMap::const_iterator first,
                         TriPoly::TermMap::const_iterator last, const TriPoly& b,
                         TriPoly::TermMap& acc, std::size_t max_terms) {
    for (auto ita = first; ita != last; ++ita) {
        for (const auto& [mb, cb] : b.terms()) {
            Monomial m{ita->first.i + mb.i, ita->first.j + mb.j, ita->first.k + mb.k};
            acc.try_emplace(m).first->second += ita->second * cb;
        }
        check_budget(acc.size(), max_terms);
    }
}

TriPoly finish_product(TriPoly::TermMap acc) {
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second.is_zero())
            it = acc.erase(it);
        else
            ++it;
    }
    return TriPoly::from_terms(std::move(acc));
}
}  // namespace

TriPoly poly_mul_serial(const TriPoly& a, const TriPoly& b, std::size_t max_terms) {
    if (a.is_zero() || b.is_zero()) return TriPoly::zero();
    TriPoly::TermMap acc;
    accumulate_products(a.terms().begin(), a.terms().end(), b, acc, max_terms);
    return finish_product(std::move(acc));
}

TriPoly poly_mul(const TriPoly& a, const TriPoly& b, std::size_t max_terms) {
    if (a.is_zero() || b.is_zero()) return TriPoly::zero();
    std::size_t pairs = a.term_count() * b.term_count();
    if (pairs < kParallelPairThreshold) return poly_mul_serial(a, b, max_terms);

    // Partition a's terms into contiguous chunks; each thread accumulates a
    // private map.  Exact addition commutes, so any merge order gives the
    // same polynomial.
    const TriPoly& big = a.term_count() >= b.term_count() ? a : b;
    const TriPoly& small = a.term_count() >= b.term_count() ? b : a;
    std::vector<TriPoly::TermMap::const_iterator> cuts;
    cuts.push_back(big.terms().begin());
    int nchunks = std::max(1, omp_get_max_threads());
    std::size_t n = big.term_count();
    std::size_t done = 0;
    auto it = big.terms().begin();
    for (int c = 1; c < nchunks; ++c) {
        std::size_t target = c * n / nchunks;
        while (done < target) {
            ++it;
            ++done;
        }
        cuts.push_back(it);
    }
    cuts.push_back(big.terms().end());

    std::vector<TriPoly::TermMap> partial(cuts.size() - 1);
    std::string error_msg;
#pragma omp parallel for schedule(static)
    for (int c = 0; c < static_cast<int>(partial.size()); ++c) {
        try {
            accumulate_products(cuts[c], cuts[c + 1], small, partial[c], max_terms);
        } catch (const std::exception& e) {
#pragma omp critical
            error_msg = e.what();
        }
    }
    if (!error_msg.empty()) throw ResourceBudget(error_msg);

    TriPoly::TermMap acc = std::move(partial[0]);
    for (std::size_t c = 1; c < partial.size(); ++c) {
        for (auto& [mono, coeff] : partial[c]) {
            auto [pos, inserted] = acc.try_emplace(mono, std::move(coeff));
            if (!inserted) pos->second += coeff;  // try_emplace left coeff intact
        }
        check_budget(acc.size(), max_terms);
    }
    return finish_product(std::move(acc));
}

TriPoly poly_pow(const TriPoly& a, unsigned e, std::size_t max_terms) {
    TriPoly acc = TriPoly::constant(1);
    TriPoly base = a;
    while (e) {
        if (e & 1u) acc = poly_mul(acc, base, max_terms);
        e >>= 1u;
        if (e) base = poly_mul(base, base, max_terms);
    }
    return acc;
}

GaussianRational poly_eval(const TriPoly& p, const GaussianRational& z,
                           const GaussianRational& w, const GaussianRational& t) {
    if (p.is_zero()) return GaussianRational();
    int d = p.degree();
    auto powers = [d](const GaussianRational& x) {
        std::vector<GaussianRational> pw(static_cast<std::size_t>(d) + 1);
        pw[0] = GaussianRational(1);
        for (int e = 1; e <= d; ++e) pw[e] = pw[e - 1] * x;
        return pw;
    };
    std::vector<GaussianRational> zp = powers(z), wp = powers(w), tp = powers(t);
    GaussianRational acc;
    for (const auto& [mono, coeff] : p.terms()) acc += coeff * zp[mono.i] * wp[mono.j] * tp[mono.k];
    return acc;
}

std::optional<TriPoly> try_divide(const TriPoly& a, const TriPoly& b) {
    if (b.is_zero()) throw std::logic_error("division by zero polynomial");
    if (a.is_zero()) return TriPoly::zero();
    if (a.degree() < b.degree()) return std::nullopt;

    TriPoly::TermMap quotient;
    TriPoly r = a;
    const Monomial& lb = b.leading_monomial();
    while (!r.is_zero()) {
        const Monomial& lr = r.leading_monomial();
        Monomial q{lr.i - lb.i, lr.j - lb.j, lr.k - lb.k};
        if (q.i < 0 || q.j < 0 || q.k < 0) return std::nullopt;
        GaussianRational qc = r.leading_coefficient() / b.leading_coefficient();
        quotient.emplace(q, qc);
        r = poly_sub(r, poly_mul_serial(TriPoly::term(qc, q.i, q.j, q.k), b));
    }
    return TriPoly::from_terms(std::move(quotient));
}

int t_multiplicity(const TriPoly& p) {
    if (p.is_zero()) return 0;
    int k = p.degree();
    for (const auto& [mono, coeff] : p.terms()) k = std::min(k, mono.k);
    return k;
}

TriPoly shift_t(const TriPoly& p, int delta) {
    if (delta == 0 || p.is_zero()) return p;
    TriPoly::TermMap out;
    for (const auto& [mono, coeff] : p.terms()) {
        if (mono.k + delta < 0) throw std::logic_error("shift_t below zero exponent");
        out.emplace(Monomial{mono.i, mono.j, mono.k + delta}, coeff);
    }
    return TriPoly::from_terms(std::move(out));
}

TriPoly normalize_leading(const TriPoly& p) {
    if (p.is_zero()) return p;
    return poly_scale(p, p.leading_coefficient().inverse());
}

// --- UniPoly ---

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly::UniPoly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const GaussianRational& c) { return UniPoly({c}); }

UniPoly UniPoly::from_roots(const std::vector<GaussianRational>& roots) {
    UniPoly p = constant(GaussianRational(1));
    for (const auto& r : roots) p = p * UniPoly({-r, GaussianRational(1)});
    return p;
}

const GaussianRational& UniPoly::leading() const {
    if (coeffs_.empty()) throw std::logic_error("leading of zero polynomial");
    return coeffs_.back();
}

GaussianRational UniPoly::eval(const GaussianRational& x) const {
    GaussianRational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (coeffs_.size() <= 1) return UniPoly();
    std::vector<GaussianRational> out(coeffs_.size() - 1);
    for (std::size_t e = 1; e < coeffs_.size(); ++e)
        out[e - 1] = coeffs_[e] * GaussianRational(Rational(static_cast<long>(e)));
    return UniPoly(std::move(out));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<GaussianRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t e = 0; e < out.size(); ++e) {
        if (e < a.coeffs_.size()) out[e] += a.coeffs_[e];
        if (e < b.coeffs_.size()) out[e] += b.coeffs_[e];
    }
    return UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<GaussianRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t e = 0; e < out.size(); ++e) {
        if (e < a.coeffs_.size()) out[e] += a.coeffs_[e];
        if (e < b.coeffs_.size()) out[e] -= b.coeffs_[e];
    }
    return UniPoly(std::move(out));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(out));
}

UniPoly UniPoly::scaled(const GaussianRational& c) const {
    std::vector<GaussianRational> out(coeffs_.size());
    for (std::size_t e = 0; e < coeffs_.size(); ++e) out[e] = coeffs_[e] * c;
    return UniPoly(std::move(out));
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::logic_error("univariate division by zero");
    if (a.degree() < b.degree()) return {UniPoly(), a};
    std::vector<GaussianRational> rem = a.coeffs_;
    std::vector<GaussianRational> quo(a.coeffs_.size() - b.coeffs_.size() + 1);
    GaussianRational inv_lead = b.leading().inverse();
    for (int e = static_cast<int>(rem.size()) - 1; e >= b.degree(); --e) {
        if (rem[e].is_zero()) continue;
        GaussianRational q = rem[e] * inv_lead;
        int shift = e - b.degree();
        quo[shift] = q;
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) rem[i + shift] -= q * b.coeffs_[i];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly gcd_univariate(const UniPoly& a, const UniPoly& b) {
    UniPoly u = a, v = b;
    while (!v.is_zero()) {
        auto [q, r] = UniPoly::divrem(u, v);
        u = std::move(v);
        // Keep remainders monic: controls coefficient growth through Euclid.
        v = r.is_zero() ? UniPoly() : r.scaled(r.leading().inverse());
    }
    if (u.is_zero()) return u;
    return u.scaled(u.leading().inverse());
}

// --- BiPoly ---

BiPoly bipoly_trim(BiPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

bool bipoly_is_zero(const BiPoly& p) {
    for (const auto& c : p)
        if (!c.is_zero()) return false;
    return true;
}

int bipoly_wdeg(const BiPoly& p) {
    for (int j = static_cast<int>(p.size()) - 1; j >= 0; --j)
        if (!p[j].is_zero()) return j;
    return -1;
}

BiPoly bipoly_sub(const BiPoly& a, const BiPoly& b) {
    BiPoly out(std::max(a.size(), b.size()));
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (j < a.size()) out[j] = out[j] + a[j];
        if (j < b.size()) out[j] = out[j] - b[j];
    }
    return bipoly_trim(std::move(out));
}

GaussianRational bipoly_eval(const BiPoly& p, const GaussianRational& z,
                             const GaussianRational& w) {
    GaussianRational acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * w + it->eval(z);
    return acc;
}

BiPoly bipoly_normalize(const BiPoly& p) {
    BiPoly q = bipoly_trim(p);
    if (q.empty()) return q;
    GaussianRational inv = q.back().leading().inverse();
    for (auto& c : q) c = c.scaled(inv);
    return q;
}

namespace {

UniPoly bipoly_content(const BiPoly& p) {
    UniPoly g;
    for (const auto& c : p) {
        g = gcd_univariate(g, c);
        if (g.degree() == 0) break;  // content is a unit already
    }
    return g;  // monic by construction (or zero)
}

BiPoly bipoly_primitive_part(const BiPoly& p) {
    UniPoly cont = bipoly_content(p);
    if (cont.is_zero()) return {};
    BiPoly out(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        auto [q, r] = UniPoly::divrem(p[j], cont);
        if (!r.is_zero()) throw std::logic_error("content does not divide coefficient");
        out[j] = std::move(q);
    }
    return bipoly_trim(std::move(out));
}

BiPoly bipoly_mul_uni(const BiPoly& p, const UniPoly& c) {
    BiPoly out(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) out[j] = p[j] * c;
    return bipoly_trim(std::move(out));
}

// Pseudo-remainder of u by v in W (coefficients in Q(i)[Z]).  Multiplies by
// lc(v) only as often as needed; the caller takes primitive parts anyway.
BiPoly bipoly_prem(BiPoly r, const BiPoly& v) {
    int dv = bipoly_wdeg(v);
    const UniPoly& lv = v[dv];
    int dr = bipoly_wdeg(r);
    while (dr >= dv && dr >= 0) {
        UniPoly lr = r[dr];
        // r <- lv*r - lr*W^(dr-dv)*v   (cancels the leading W term exactly)
        BiPoly scaled = bipoly_mul_uni(r, lv);
        BiPoly shifted(static_cast<std::size_t>(dr - dv) + v.size());
        for (std::size_t j = 0; j < v.size(); ++j) shifted[j + (dr - dv)] = v[j] * lr;
        r = bipoly_sub(scaled, shifted);
        int new_dr = bipoly_wdeg(r);
        if (new_dr >= dr) throw std::logic_error("pseudo-division failed to reduce degree");
        dr = new_dr;
    }
    return r;
}

}  // namespace

BiPoly gcd_bivariate(const BiPoly& a, const BiPoly& b) {
    if (bipoly_is_zero(a)) return bipoly_normalize(b);
    if (bipoly_is_zero(b)) return bipoly_normalize(a);

    UniPoly cont_g = gcd_univariate(bipoly_content(a), bipoly_content(b));
    BiPoly u = bipoly_primitive_part(a);
    BiPoly v = bipoly_primitive_part(b);
    if (bipoly_wdeg(u) < bipoly_wdeg(v)) std::swap(u, v);
    while (!bipoly_is_zero(v)) {
        BiPoly r = bipoly_prem(u, v);
        u = std::move(v);
        v = bipoly_is_zero(r) ? BiPoly{} : bipoly_primitive_part(r);
    }
    BiPoly pp_gcd = bipoly_wdeg(u) > 0 ? u : BiPoly{UniPoly::constant(GaussianRational(1))};
    return bipoly_normalize(bipoly_mul_uni(pp_gcd, cont_g));
}

bool provably_coprime(const TriPoly& a, const TriPoly& b) {
    if (a.is_zero() || b.is_zero()) return false;
    if (a.is_constant() || b.is_constant()) return true;
    int ka = t_multiplicity(a), kb = t_multiplicity(b);
    if (ka > 0 && kb > 0) return false;  // both divisible by T

    BiPoly pa = dehomogenize(shift_t(a, -ka));
    BiPoly pb = dehomogenize(shift_t(b, -kb));

    // A common factor free of W divides both contents.
    UniPoly ca = bipoly_content(pa), cb = bipoly_content(pb);
    if (ca.degree() > 0 && cb.degree() > 0 && gcd_univariate(ca, cb).degree() > 0) return false;

    BiPoly qa = bipoly_primitive_part(pa), qb = bipoly_primitive_part(pb);
    int da = bipoly_wdeg(qa), db = bipoly_wdeg(qb);
    if (da <= 0 || db <= 0) return true;  // no W-positive part left to share

    // Specialize Z at a point where both leading W-coefficients survive: a
    // common W-positive factor would then specialize to a common factor of
    // the two univariate images, so a coprime image is a proof.
    int tried = 0;
    for (long z0 : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L, 7L, -7L, 11L, -11L, 13L}) {
        GaussianRational zg{Rational(z0)};
        if (qa[static_cast<std::size_t>(da)].eval(zg).is_zero()) continue;
        if (qb[static_cast<std::size_t>(db)].eval(zg).is_zero()) continue;
        auto specialize = [&](const BiPoly& p) {
            std::vector<GaussianRational> cs(p.size());
            for (std::size_t j = 0; j < p.size(); ++j) cs[j] = p[j].eval(zg);
            return UniPoly(std::move(cs));
        };
        if (gcd_univariate(specialize(qa), specialize(qb)).degree() == 0) return true;
        if (++tried >= 3) break;  // consistently entangled: likely a real factor
    }
    return false;
}

BiPoly dehomogenize(const TriPoly& p) {
    BiPoly out;
    for (const auto& [mono, coeff] : p.terms()) {
        if (static_cast<std::size_t>(mono.j) >= out.size()) out.resize(mono.j + 1);
        std::vector<GaussianRational> c = out[mono.j].coeffs();
        if (static_cast<std::size_t>(mono.i) >= c.size()) c.resize(mono.i + 1);
        c[mono.i] += coeff;
        out[mono.j] = UniPoly(std::move(c));
    }
    return bipoly_trim(std::move(out));
}

TriPoly homogenize(const BiPoly& p) {
    int total = -1;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j].is_zero()) continue;
        for (int i = 0; i <= p[j].degree(); ++i)
            if (!p[j].coeffs()[i].is_zero()) total = std::max(total, static_cast<int>(j) + i);
    }
    if (total < 0) return TriPoly::zero();
    TriPoly::TermMap terms;
    for (std::size_t j = 0; j < p.size(); ++j) {
        for (int i = 0; i <= p[j].degree(); ++i) {
            const GaussianRational& c = p[j].coeffs()[i];
            if (c.is_zero()) continue;
            terms.emplace(Monomial{i, static_cast<int>(j), total - i - static_cast<int>(j)}, c);
        }
    }
    return TriPoly::from_terms(std::move(terms));
}

TriPoly poly_gcd(const TriPoly& a, const TriPoly& b) {
    if (a.is_zero() && b.is_zero())
        throw PreconditionViolation("gcd of two zero polynomials");
    if (a.is_zero()) return normalize_leading(b);
    if (b.is_zero()) return normalize_leading(a);

    int ka = t_multiplicity(a), kb = t_multiplicity(b);
    int k = std::min(ka, kb);
    BiPoly abar = dehomogenize(shift_t(a, -ka));
    BiPoly bbar = dehomogenize(shift_t(b, -kb));
    TriPoly g = homogenize(gcd_bivariate(abar, bbar));
    return normalize_leading(shift_t(g, k));
}

}  // namespace blaschke2d
