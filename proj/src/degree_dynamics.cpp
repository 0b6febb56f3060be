#include "blaschke2d/degree_dynamics.hpp"

#include <cmath>

namespace blaschke2d {

namespace {
long long checked_mul(long long x, long long y) {
    long long r;
    if (__builtin_mul_overflow(x, y, &r))
        throw ResourceBudget("degree exceeds 64-bit range");
    return r;
}
long long checked_add(long long x, long long y) {
    long long r;
    if (__builtin_add_overflow(x, y, &r))
        throw ResourceBudget("degree exceeds 64-bit range");
    return r;
}
}  // namespace

std::array<long long, 3> PullbackMatrix::apply(const std::array<long long, 3>& v) const {
    std::array<long long, 3> out{};
    for (int i = 0; i < 3; ++i) {
        long long acc = 0;
        for (int j = 0; j < 3; ++j) acc = checked_add(acc, checked_mul(a[i][j], v[j]));
        out[i] = acc;
    }
    return out;
}

PullbackMatrix pullback_matrix(const DegreeMatrix& N) {
    N.validate();
    PullbackMatrix M;
    long long m = N.m, n = N.n, p = N.p, q = N.q;
    M.a[0][0] = m + n;
    M.a[0][1] = p + q;
    M.a[0][2] = m + n;
    M.a[1][0] = n;
    M.a[1][1] = q;
    M.a[1][2] = n;
    M.a[2][0] = -n;
    M.a[2][1] = -q;
    M.a[2][2] = -n;
    return M;
}

CharPoly char_poly(const PullbackMatrix& M) {
    const auto& a = M.a;
    long long tr = a[0][0] + a[1][1] + a[2][2];
    long long minors = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) +
                       (a[0][0] * a[2][2] - a[0][2] * a[2][0]) +
                       (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
    long long det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                    a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                    a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    return CharPoly{-tr, minors, -det};
}

std::vector<long long> predicted_degrees(const DegreeMatrix& N, int count) {
    if (count < 0) throw PreconditionViolation("count must be nonnegative");
    PullbackMatrix M = pullback_matrix(N);
    std::array<long long, 3> v{1, 1, 0};  // a vertical line pulls back to both
                                          // the strict transform and one
                                          // exceptional class
    std::vector<long long> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        v = M.apply(v);
        out.push_back(v[0]);
    }
    return out;
}

std::vector<long long> monomial_degrees(const DegreeMatrix& N, int count) {
    if (count < 0) throw PreconditionViolation("count must be nonnegative");
    const long long base[2][2] = {{N.m, N.n}, {N.p, N.q}};
    long long e[2][2] = {{N.m, N.n}, {N.p, N.q}};
    std::vector<long long> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        out.push_back(std::max(checked_add(e[0][0], e[0][1]), checked_add(e[1][0], e[1][1])));
        long long nxt[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                nxt[i][j] = checked_add(checked_mul(e[i][0], base[0][j]),
                                        checked_mul(e[i][1], base[1][j]));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) e[i][j] = nxt[i][j];
    }
    return out;
}

namespace {

// Distinct factors of H's three components with per-component multiplicities.
struct ComponentFactors {
    std::vector<TriPoly> polys;
    std::array<GaussianRational, 3> units;
    std::array<std::vector<int>, 3> mult;
};

ComponentFactors component_factors(const std::array<FactoredComponent, 3>& fc) {
    ComponentFactors cf;
    for (int c = 0; c < 3; ++c) {
        cf.units[c] = fc[c].unit;
        for (const auto& [poly, mult] : fc[c].factors) {
            std::size_t idx = 0;
            while (idx < cf.polys.size() && !(cf.polys[idx] == poly)) ++idx;
            if (idx == cf.polys.size()) {
                cf.polys.push_back(poly);
                for (int cc = 0; cc < 3; ++cc) cf.mult[cc].push_back(0);
            }
            cf.mult[c][idx] += mult;
        }
    }
    return cf;
}

// A composed linear form alpha*H_i + beta*H_j, pre-split using the known
// coprime factor basis of H: the shared part is read off the multiplicity
// vectors (no polynomial gcd), leaving only a lower-degree residual to be
// refined later.
struct SplitFactor {
    GaussianRational unit{1};  // scalar pulled out in front
    std::vector<std::pair<std::size_t, int>> known;  // (basis index, multiplicity)
    std::optional<TriPoly> residual;
};

SplitFactor split_composed(const ComponentFactors& cf, int i, const GaussianRational& alpha,
                           int j, const GaussianRational& beta, std::size_t max_terms) {
    SplitFactor out;
    auto expand = [&](const std::vector<int>& exps) {
        TriPoly acc = TriPoly::constant(GaussianRational(1));
        for (std::size_t u = 0; u < cf.polys.size(); ++u)
            if (exps[u] > 0)
                acc = poly_mul(acc, poly_pow(cf.polys[u], static_cast<unsigned>(exps[u]),
                                             max_terms),
                               max_terms);
        return acc;
    };

    if (beta.is_zero() || alpha.is_zero()) {  // pure component: all bookkeeping
        int c = beta.is_zero() ? i : j;
        out.unit = (beta.is_zero() ? alpha : beta) * cf.units[static_cast<std::size_t>(c)];
        for (std::size_t u = 0; u < cf.polys.size(); ++u)
            if (cf.mult[static_cast<std::size_t>(c)][u] > 0)
                out.known.emplace_back(u, cf.mult[static_cast<std::size_t>(c)][u]);
        return out;
    }

    const auto& mi = cf.mult[static_cast<std::size_t>(i)];
    const auto& mj = cf.mult[static_cast<std::size_t>(j)];
    std::vector<int> ri(cf.polys.size()), rj(cf.polys.size());
    for (std::size_t u = 0; u < cf.polys.size(); ++u) {
        int shared = std::min(mi[u], mj[u]);
        if (shared > 0) out.known.emplace_back(u, shared);
        ri[u] = mi[u] - shared;
        rj[u] = mj[u] - shared;
    }
    TriPoly res = poly_add(
        poly_scale(expand(ri), alpha * cf.units[static_cast<std::size_t>(i)]),
        poly_scale(expand(rj), beta * cf.units[static_cast<std::size_t>(j)]));
    if (res.is_zero()) throw InvariantViolation("composed factor residual vanished");
    if (res.term_count() > max_terms)
        throw ResourceBudget("composed factor exceeds term budget");
    out.residual = std::move(res);
    return out;
}

// Composed linear form without factored structure: plain expansion.
TriPoly compose_linear(const GaussianRational& cz, const GaussianRational& cw,
                       const GaussianRational& ct, const HomogeneousMap& H,
                       std::size_t max_terms) {
    TriPoly acc = TriPoly::zero();
    if (!cz.is_zero()) acc = poly_add(acc, poly_scale(H.F1, cz));
    if (!cw.is_zero()) acc = poly_add(acc, poly_scale(H.F2, cw));
    if (!ct.is_zero()) acc = poly_add(acc, poly_scale(H.F3, ct));
    if (acc.term_count() > max_terms) throw ResourceBudget("composed factor exceeds term budget");
    return acc;
}

}  // namespace

HomogeneousMap compose_reduce(const Blaschke2D& f, const HomogeneousMap& H,
                              std::size_t max_terms) {
    // Coefficient triples (component index, scalar) of the linear forms
    // making up each lift component: {i, alpha, j, beta} means alpha*H_i +
    // beta*H_j.  Zero-type forms mix components 1/2 with 3, pole-type forms
    // mix 3 with 1/2.
    struct Form {
        int i;
        GaussianRational alpha;
        int j;
        GaussianRational beta;
    };
    std::vector<Form> forms;
    std::vector<std::array<int, 3>> uses;  // how often each form appears per component
    auto add_form = [&](Form fm, int c, int count) {
        for (std::size_t k = 0; k < forms.size(); ++k) {
            if (forms[k].i == fm.i && forms[k].j == fm.j && forms[k].alpha == fm.alpha &&
                forms[k].beta == fm.beta) {
                uses[k][c] += count;
                return;
            }
        }
        forms.push_back(std::move(fm));
        uses.push_back({0, 0, 0});
        uses.back()[c] += count;
    };
    GaussianRational one(1);
    for (const auto& a : f.A().zeros()) {
        add_form({0, one, 2, -a}, 0, 1);          // (Z - aT) o H in component 1
        add_form({2, one, 0, -a.conj()}, 1, 1);   // (T - conj(a) Z) o H in component 2
        add_form({2, one, 0, -a.conj()}, 2, 1);   // ... and in component 3
    }
    for (const auto& b : f.B().zeros()) {
        add_form({1, one, 2, -b}, 0, 1);
        add_form({2, one, 1, -b.conj()}, 1, 1);
        add_form({2, one, 1, -b.conj()}, 2, 1);
    }
    for (const auto& c : f.C().zeros()) {
        add_form({0, one, 2, -c}, 1, 1);
        add_form({2, one, 0, -c.conj()}, 0, 1);
        add_form({2, one, 0, -c.conj()}, 2, 1);
    }
    for (const auto& d : f.D().zeros()) {
        add_form({1, one, 2, -d}, 1, 1);
        add_form({2, one, 1, -d.conj()}, 0, 1);
        add_form({2, one, 1, -d.conj()}, 2, 1);
    }

    FactoredComponent c1, c2, c3;
    c1.unit = f.theta1();
    c2.unit = f.theta2();
    std::array<FactoredComponent*, 3> comps{&c1, &c2, &c3};

    if (H.factored) {
        ComponentFactors cf = component_factors(*H.factored);
        for (std::size_t k = 0; k < forms.size(); ++k) {
            SplitFactor sf = split_composed(cf, forms[k].i, forms[k].alpha, forms[k].j,
                                            forms[k].beta, max_terms);
            for (int c = 0; c < 3; ++c) {
                int count = uses[k][c];
                if (count == 0) continue;
                if (!sf.unit.is_one())
                    comps[c]->unit *= gaussian_pow(sf.unit, static_cast<unsigned>(count));
                for (const auto& [u, mult] : sf.known)
                    comps[c]->factors.emplace_back(cf.polys[u], mult * count);
                if (sf.residual) comps[c]->factors.emplace_back(*sf.residual, count);
            }
        }
    } else {
        for (std::size_t k = 0; k < forms.size(); ++k) {
            GaussianRational coeffs[3] = {};
            coeffs[forms[k].i] = forms[k].alpha;
            coeffs[forms[k].j] += forms[k].beta;
            TriPoly composed = compose_linear(coeffs[0], coeffs[1], coeffs[2], H, max_terms);
            for (int c = 0; c < 3; ++c)
                if (uses[k][c] > 0) comps[c]->factors.emplace_back(composed, uses[k][c]);
        }
    }

    return reduce_factored({std::move(c1), std::move(c2), std::move(c3)}, max_terms);
}

HomogeneousMap compose_reduce_generic(const HomogeneousMap& g, const HomogeneousMap& H,
                                      std::size_t max_terms) {
    // Shared power ladders for the three substituted components.
    int max_i = 0, max_j = 0, max_k = 0;
    for (int c = 0; c < 3; ++c) {
        for (const auto& [mono, coeff] : g.component(c).terms()) {
            max_i = std::max(max_i, mono.i);
            max_j = std::max(max_j, mono.j);
            max_k = std::max(max_k, mono.k);
        }
    }
    auto ladder = [&](const TriPoly& base, int top) {
        std::vector<TriPoly> powers;
        powers.push_back(TriPoly::constant(GaussianRational(1)));
        for (int e = 1; e <= top; ++e)
            powers.push_back(poly_mul(powers.back(), base, max_terms));
        return powers;
    };
    std::vector<TriPoly> p1 = ladder(H.F1, max_i), p2 = ladder(H.F2, max_j),
                         p3 = ladder(H.F3, max_k);

    HomogeneousMap out;
    TriPoly comps[3];
    for (int c = 0; c < 3; ++c) {
        TriPoly acc = TriPoly::zero();
        for (const auto& [mono, coeff] : g.component(c).terms()) {
            TriPoly term = poly_mul(p1[static_cast<std::size_t>(mono.i)],
                                    p2[static_cast<std::size_t>(mono.j)], max_terms);
            term = poly_mul(term, p3[static_cast<std::size_t>(mono.k)], max_terms);
            acc = poly_add(acc, poly_scale(term, coeff));
            if (acc.term_count() > max_terms)
                throw ResourceBudget("composite component exceeds term budget");
        }
        comps[c] = std::move(acc);
    }

    TriPoly common = poly_gcd(comps[0], comps[1]);
    common = common.is_constant() ? common : poly_gcd(common, comps[2]);
    if (!common.is_constant()) {
        for (auto& comp : comps) {
            auto quot = try_divide(comp, common);
            if (!quot) throw InvariantViolation("gcd fails to divide a composite component");
            comp = std::move(*quot);
        }
    }
    out.F1 = std::move(comps[0]);
    out.F2 = std::move(comps[1]);
    out.F3 = std::move(comps[2]);
    if (out.F1.degree() != out.F2.degree() || out.F1.degree() != out.F3.degree())
        throw InvariantViolation("reduced composite has unequal component degrees");
    out.degree = out.F1.degree();
    return out;
}

DegreeSequence degree_sequence(const Blaschke2D& f, int count, std::size_t max_terms) {
    if (count < 0) throw PreconditionViolation("count must be nonnegative");
    DegreeSequence seq;
    if (count == 0) return seq;
    try {
        HomogeneousMap H = lift(f, max_terms);
        seq.degrees.push_back(H.degree);
        for (int k = 2; k <= count; ++k) {
            H = compose_reduce(f, H, max_terms);
            seq.degrees.push_back(H.degree);
        }
    } catch (const ResourceBudget&) {
        seq.truncated = true;
    }
    return seq;
}

double Surd::value() const {
    return (static_cast<double>(add) + std::sqrt(static_cast<double>(radicand))) /
           static_cast<double>(div);
}

std::string Surd::to_string() const {
    long long root = std::llround(std::sqrt(static_cast<double>(radicand)));
    while (root * root > radicand) --root;
    while ((root + 1) * (root + 1) <= radicand) ++root;
    if (root * root == radicand) {
        Rational exact(static_cast<long>(add + root), static_cast<long>(div));
        exact.canonicalize();
        return blaschke2d::to_string(exact);
    }
    return "(" + std::to_string(add) + "+sqrt(" + std::to_string(radicand) + "))/" +
           std::to_string(div);
}

Surd c_plus(const DegreeMatrix& N) {
    N.validate();
    Surd s;
    s.add = static_cast<long long>(N.m) + N.q;
    long long diff = static_cast<long long>(N.m) - N.q;
    s.radicand = diff * diff + 4LL * N.n * N.p;
    s.div = 2;
    return s;
}

Lambda1Estimate estimate_lambda1(const std::vector<long long>& degrees) {
    if (degrees.empty()) throw PreconditionViolation("need at least one degree");
    Lambda1Estimate est;
    std::size_t k = degrees.size();
    est.ratio = k >= 2 ? static_cast<double>(degrees[k - 1]) / static_cast<double>(degrees[k - 2])
                       : static_cast<double>(degrees[0]);
    est.root = std::pow(static_cast<double>(degrees[k - 1]), 1.0 / static_cast<double>(k));
    return est;
}

}  // namespace blaschke2d
