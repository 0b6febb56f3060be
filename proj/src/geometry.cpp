#include "blaschke2d/geometry.hpp"

#include <algorithm>
#include <set>

namespace blaschke2d {

const char* line_kind_name(LineKind kind) {
    switch (kind) {
        case LineKind::ZeroOfA: return "zero-of-A";
        case LineKind::PoleOfA: return "pole-of-A";
        case LineKind::ZeroOfB: return "zero-of-B";
        case LineKind::PoleOfB: return "pole-of-B";
        case LineKind::ZeroOfC: return "zero-of-C";
        case LineKind::PoleOfC: return "pole-of-C";
        case LineKind::ZeroOfD: return "zero-of-D";
        case LineKind::PoleOfD: return "pole-of-D";
        case LineKind::Infinity: return "line-at-infinity";
    }
    return "?";
}

namespace {

ProjLine zero_line_z(LineKind kind, const GaussianRational& a) {
    return {kind, TriPoly::linear(GaussianRational(1), GaussianRational(), -a), a, a.is_zero()};
}
ProjLine zero_line_w(LineKind kind, const GaussianRational& b) {
    return {kind, TriPoly::linear(GaussianRational(), GaussianRational(1), -b), b, b.is_zero()};
}
ProjLine pole_line_z(LineKind kind, const GaussianRational& a) {
    return {kind, TriPoly::linear(-a.conj(), GaussianRational(), GaussianRational(1)), a,
            a.is_zero()};
}
ProjLine pole_line_w(LineKind kind, const GaussianRational& b) {
    return {kind, TriPoly::linear(GaussianRational(), -b.conj(), GaussianRational(1)), b,
            b.is_zero()};
}

}  // namespace

std::vector<ProjLine> line_arrangement(const Blaschke2D& f) {
    std::vector<ProjLine> lines;
    for (const auto& a : f.A().zeros()) lines.push_back(zero_line_z(LineKind::ZeroOfA, a));
    for (const auto& a : f.A().zeros()) lines.push_back(pole_line_z(LineKind::PoleOfA, a));
    for (const auto& b : f.B().zeros()) lines.push_back(zero_line_w(LineKind::ZeroOfB, b));
    for (const auto& b : f.B().zeros()) lines.push_back(pole_line_w(LineKind::PoleOfB, b));
    for (const auto& c : f.C().zeros()) lines.push_back(zero_line_z(LineKind::ZeroOfC, c));
    for (const auto& c : f.C().zeros()) lines.push_back(pole_line_z(LineKind::PoleOfC, c));
    for (const auto& d : f.D().zeros()) lines.push_back(zero_line_w(LineKind::ZeroOfD, d));
    for (const auto& d : f.D().zeros()) lines.push_back(pole_line_w(LineKind::PoleOfD, d));
    lines.push_back(
        {LineKind::Infinity, TriPoly::linear(GaussianRational(), GaussianRational(),
                                             GaussianRational(1)),
         GaussianRational(), false});
    return lines;
}

bool operator==(const AffinePoint& a, const AffinePoint& b) { return a.z == b.z && a.w == b.w; }

bool operator<(const AffinePoint& a, const AffinePoint& b) {
    if (a.z < b.z) return true;
    if (b.z < a.z) return false;
    return a.w < b.w;
}

IndetSet indeterminacy_points(const Blaschke2D& f) {
    IndetSet out;

    bool degenerate = false;
    std::vector<GaussianRational> all = f.sigma();
    for (std::size_t i = 0; i < all.size() && !degenerate; ++i) {
        if (all[i].is_zero()) degenerate = true;
        for (std::size_t j = i + 1; j < all.size() && !degenerate; ++j)
            if (all[i] == all[j]) degenerate = true;
    }
    if (degenerate)
        out.warning =
            "repeated or zero zeros: candidate intersections filtered by exact vanishing";

    // Candidate points from the six families of line intersections.  A zero
    // at the origin pushes its pole line to infinity, so reciprocal-based
    // candidates are skipped for it.
    std::vector<AffinePoint> candidates;
    auto recip = [](const GaussianRational& x) { return x.conj().inverse(); };
    auto add = [&](const GaussianRational& z, const GaussianRational& w) {
        candidates.push_back({z, w});
    };
    const auto &za = f.A().zeros(), &zb = f.B().zeros(), &zc = f.C().zeros(),
               &zd = f.D().zeros();
    for (const auto& a : za)
        for (const auto& b : zb) {
            if (!b.is_zero()) add(a, recip(b));  // zero line of A meets pole line of B
            if (!a.is_zero()) add(recip(a), b);  // pole line of A meets zero line of B
        }
    for (const auto& c : zc)
        for (const auto& d : zd) {
            if (!d.is_zero()) add(c, recip(d));
            if (!c.is_zero()) add(recip(c), d);
        }
    for (const auto& a : za)
        for (const auto& d : zd)
            if (!a.is_zero() && !d.is_zero()) add(recip(a), recip(d));  // pole meets pole
    for (const auto& c : zc)
        for (const auto& b : zb)
            if (!c.is_zero() && !b.is_zero()) add(recip(c), recip(b));

    // Verify exact vanishing of all three reduced lift components.
    HomogeneousMap H = lift(f);
    std::set<std::pair<GaussianRational, GaussianRational>> seen;
    for (const auto& pt : candidates) {
        bool vanishes = true;
        for (int c = 0; c < 3 && vanishes; ++c)
            vanishes = poly_eval(H.component(c), pt.z, pt.w, GaussianRational(1)).is_zero();
        if (!vanishes) {
            if (!degenerate)
                throw InvariantViolation("enumerated indeterminacy candidate fails to vanish");
            continue;  // fake candidate removed by cancellation
        }
        if (seen.emplace(pt.z, pt.w).second) out.finite_points.push_back(pt);
    }
    std::sort(out.finite_points.begin(), out.finite_points.end());
    return out;
}

namespace {

// Numerator of the derivative: P'Q - PQ'.
UniPoly wronskian(const UniPoly& p, const UniPoly& q) {
    return p.derivative() * q - p * q.derivative();
}

}  // namespace

GaussianRational CriticalLocus::eval_numerator(const GaussianRational& z,
                                               const GaussianRational& w) const {
    return bipoly_eval(numerator, z, w);
}

GaussianRational CriticalLocus::eval(const GaussianRational& z, const GaussianRational& w) const {
    GaussianRational dz = den_z.eval(z), dw = den_w.eval(w);
    if (dz.is_zero() || dw.is_zero())
        throw DegenerateConfiguration("Jacobian evaluated on a pole line");
    GaussianRational den = dz * dw;
    return eval_numerator(z, w) / (den * den);
}

CriticalLocus critical_jacobian(const Blaschke2D& f) {
    UniPoly pa = f.A().numerator(), qa = f.A().denominator();
    UniPoly pb = f.B().numerator(), qb = f.B().denominator();
    UniPoly pc = f.C().numerator(), qc = f.C().denominator();
    UniPoly pd = f.D().numerator(), qd = f.D().denominator();

    // J = theta1 theta2 [ W(A) P_C Q_C (z) . W(D) P_B Q_B (w)
    //                     - W(C) P_A Q_A (z) . W(B) P_D Q_D (w) ] / (Q_A Q_C Q_B Q_D)^2
    UniPoly u1 = wronskian(pa, qa) * (pc * qc);
    UniPoly v1 = wronskian(pd, qd) * (pb * qb);
    UniPoly u2 = wronskian(pc, qc) * (pa * qa);
    UniPoly v2 = wronskian(pb, qb) * (pd * qd);

    GaussianRational unit = f.theta1() * f.theta2();
    std::size_t wsize = std::max(v1.coeffs().size(), v2.coeffs().size());
    BiPoly num(wsize);
    for (std::size_t j = 0; j < wsize; ++j) {
        GaussianRational c1 = j < v1.coeffs().size() ? v1.coeffs()[j] : GaussianRational();
        GaussianRational c2 = j < v2.coeffs().size() ? v2.coeffs()[j] : GaussianRational();
        num[j] = (u1.scaled(c1) - u2.scaled(c2)).scaled(unit);
    }

    CriticalLocus out;
    out.numerator = bipoly_trim(std::move(num));
    out.den_z = qa * qc;
    out.den_w = qb * qd;
    return out;
}

int OneVarRational::degree() const { return std::max(num.degree(), den.degree()); }

bool OneVarRational::is_constant() const {
    if (scale.is_zero() || num.is_zero()) return true;
    return wronskian(num, den).is_zero();
}

GaussianRational OneVarRational::eval(const GaussianRational& x) const {
    GaussianRational d = den.eval(x);
    if (d.is_zero()) throw DegenerateConfiguration("evaluation at a pole");
    return scale * num.eval(x) / d;
}

GaussianRational OneVarRational::derivative(const GaussianRational& x) const {
    GaussianRational d = den.eval(x);
    if (d.is_zero()) throw DegenerateConfiguration("derivative at a pole");
    return scale * wronskian(num, den).eval(x) / (d * d);
}

namespace {

// scale * prod (x - z_i) / (1 - conj(z_i) x), the moving part of an
// extension or covering map.
OneVarRational blaschke_style(const GaussianRational& scale,
                              const std::vector<GaussianRational>& zeros) {
    OneVarRational r;
    r.scale = scale;
    r.num = UniPoly::from_roots(zeros);
    r.den = UniPoly::constant(GaussianRational(1));
    for (const auto& z : zeros) r.den = r.den * UniPoly({GaussianRational(1), -z.conj()});
    return r;
}

GaussianRational reciprocal_product(const std::vector<GaussianRational>& zeros,
                                    const char* which) {
    GaussianRational prod(1);
    for (const auto& z : zeros) {
        if (z.is_zero())
            throw ZeroAtOrigin(std::string("extension needs nonzero zeros of ") + which);
        prod *= -z.conj().inverse();
    }
    return prod;
}

}  // namespace

ExceptionalMaps exceptional_extension(const Blaschke2D& f) {
    ExceptionalMaps maps;
    // Over the divisor at z = infinity the A and C factors contribute only
    // the constants prod(-1/conj(a_i)), prod(-1/conj(c_k)); the B and D
    // factors survive in the fiber coordinate.
    maps.z_infinity.h1 = blaschke_style(
        f.theta1() * reciprocal_product(f.A().zeros(), "A"), f.B().zeros());
    maps.z_infinity.h2 = blaschke_style(
        f.theta2() * reciprocal_product(f.C().zeros(), "C"), f.D().zeros());
    maps.w_infinity.h1 = blaschke_style(
        f.theta1() * reciprocal_product(f.B().zeros(), "B"), f.A().zeros());
    maps.w_infinity.h2 = blaschke_style(
        f.theta2() * reciprocal_product(f.D().zeros(), "D"), f.C().zeros());
    return maps;
}

PoleLineCover pole_line_cover(const Blaschke2D& f, const ProjLine& line) {
    auto eval_guarded = [](const OneVarBlaschke& g, const GaussianRational& x,
                           const char* clash) -> GaussianRational {
        for (const auto& z : g.zeros())
            if ((GaussianRational(1) - z.conj() * x).is_zero())
                throw CoincidentZeros(clash);
        return g.eval(x);
    };
    if (line.degenerate)
        throw CoincidentZeros("pole line at infinity (zero at the origin) has no affine chart");

    PoleLineCover out;
    const GaussianRational& s = line.parameter;
    GaussianRational at = s.conj().inverse();  // the line is z (or w) = 1/conj(s)
    switch (line.kind) {
        case LineKind::PoleOfA:
            // first coordinate blows up; the second restricts to theta2 C(1/conj(a)) D(w)
            out.map = blaschke_style(f.theta2() * eval_guarded(f.C(), at, "zero shared by A and C"),
                                     f.D().zeros());
            out.degree = f.N().q;
            out.variable = 'w';
            break;
        case LineKind::PoleOfB:
            out.map = blaschke_style(f.theta2() * eval_guarded(f.D(), at, "zero shared by B and D"),
                                     f.C().zeros());
            out.degree = f.N().p;
            out.variable = 'z';
            break;
        case LineKind::PoleOfC:
            out.map = blaschke_style(f.theta1() * eval_guarded(f.A(), at, "zero shared by A and C"),
                                     f.B().zeros());
            out.degree = f.N().n;
            out.variable = 'w';
            break;
        case LineKind::PoleOfD:
            out.map = blaschke_style(f.theta1() * eval_guarded(f.B(), at, "zero shared by B and D"),
                                     f.A().zeros());
            out.degree = f.N().m;
            out.variable = 'z';
            break;
        default:
            throw PreconditionViolation("covering maps exist only for pole lines");
    }
    return out;
}

}  // namespace blaschke2d
