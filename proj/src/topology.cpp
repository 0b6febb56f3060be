#include "blaschke2d/topology.hpp"

#include <cmath>
#include <complex>

#include "blaschke2d/geometry.hpp"
#include "blaschke2d/rng.hpp"

namespace blaschke2d {

const char* case_name(CaseKind kind) {
    switch (kind) {
        case CaseKind::CaseI: return "CaseI";
        case CaseKind::CaseII: return "CaseII";
        case CaseKind::CaseIII: return "CaseIII";
    }
    return "?";
}

CaseLabel classify_case(const DegreeMatrix& n, long long d_top) {
    long long det = n.det();
    long long trace = n.m + n.q;
    if (d_top < det)
        throw InvariantViolation("topological degree " + std::to_string(d_top) +
                                 " below det N = " + std::to_string(det));

    // p(x) = (x - c_minus)(x - c_plus); both roots are positive and real.
    long long p = d_top * d_top - trace * d_top + det;
    int sign = p > 0 ? 1 : (p < 0 ? -1 : 0);

    CaseKind kind;
    if (sign < 0) {
        kind = CaseKind::CaseII;  // strictly between the roots, so below c_plus
    } else if (sign == 0) {
        // d_top is a root; the vertex test tells the two roots apart.
        if (2 * d_top >= trace) kind = CaseKind::CaseIII;
        else kind = CaseKind::CaseII;
    } else {
        // outside the roots: right of the vertex means right of c_plus
        kind = (2 * d_top > trace) ? CaseKind::CaseI : CaseKind::CaseII;
    }
    return CaseLabel{kind, d_top, trace, det, sign};
}

std::vector<std::pair<GaussianRational, GaussianRational>> preimages_of_origin(
    const Blaschke2D& f) {
    std::vector<std::pair<GaussianRational, GaussianRational>> out;
    out.reserve(static_cast<std::size_t>(f.N().m * f.N().q + f.N().n * f.N().p));
    for (const auto& a : f.A().zeros())
        for (const auto& d : f.D().zeros()) out.emplace_back(a, d);
    for (const auto& c : f.C().zeros())
        for (const auto& b : f.B().zeros()) out.emplace_back(c, b);
    return out;
}

namespace {

// W(P,Q) = P'Q - PQ'; the factor's derivative vanishes exactly where this does.
GaussianRational wronskian_at(const OneVarBlaschke& g, const GaussianRational& x) {
    UniPoly p = g.numerator(), q = g.denominator();
    return p.derivative().eval(x) * q.eval(x) - p.eval(x) * q.derivative().eval(x);
}

void add_reason(GenericityReport& report, std::string reason) {
    report.generic = false;
    for (const auto& existing : report.reasons)
        if (existing == reason) return;
    report.reasons.push_back(std::move(reason));
}

void check_factor(const OneVarBlaschke& g, const char* label, GenericityReport& report) {
    for (const auto& zero : g.zeros()) {
        if (zero.is_zero())
            add_reason(report, std::string(label) + " has a zero at the origin");
        else if (wronskian_at(g, zero).is_zero())
            add_reason(report, std::string(label) + " has a critical zero at " + to_string(zero));
    }
}

void check_distinct(const std::vector<GaussianRational>& pooled, const char* which,
                    GenericityReport& report) {
    for (std::size_t i = 0; i < pooled.size(); ++i)
        for (std::size_t j = i + 1; j < pooled.size(); ++j)
            if (pooled[i] == pooled[j]) {
                add_reason(report, std::string("repeated ") + which + "-side zero " +
                                       to_string(pooled[i]));
                return;
            }
}

}  // namespace

GenericityReport is_generic(const Blaschke2D& f) {
    GenericityReport report;

    std::vector<GaussianRational> zs = f.A().zeros();
    zs.insert(zs.end(), f.C().zeros().begin(), f.C().zeros().end());
    check_distinct(zs, "z", report);

    std::vector<GaussianRational> ws = f.B().zeros();
    ws.insert(ws.end(), f.D().zeros().begin(), f.D().zeros().end());
    check_distinct(ws, "w", report);

    check_factor(f.A(), "A", report);
    check_factor(f.B(), "B", report);
    check_factor(f.C(), "C", report);
    check_factor(f.D(), "D", report);
    return report;
}

namespace {

// Convert the exact critical-locus numerator into the solver's layout.
BivarPoly critical_numerator_complex(const Blaschke2D& f) {
    CriticalLocus locus = critical_jacobian(f);
    BivarPoly out;
    out.by_w.reserve(locus.numerator.size());
    for (const UniPoly& row : locus.numerator) out.by_w.push_back(to_complex_poly(row));
    return out;
}

// Critical values of f seen from a few z-slices of the critical locus; the
// target rejection test only needs a representative sample.
std::vector<std::pair<Complex, Complex>> sample_critical_values(const Blaschke2D& f,
                                                                const SolverConfig& cfg) {
    std::vector<std::pair<Complex, Complex>> values;
    BivarPoly jac = critical_numerator_complex(f);
    if (jac.wdeg() < 0) return values;
    for (double radius : {0.5, 0.8}) {
        for (int k = 0; k < 6; ++k) {
            double ang = 2.0 * M_PI * (k + 0.31) / 6.0;
            Complex z0 = radius * Complex{std::cos(ang), std::sin(ang)};
            ComplexPoly slice = jac.at_z(z0).trimmed(cfg.trim_rel);
            if (slice.degree() < 1) continue;
            RootSet roots;
            try {
                roots = univariate_roots(slice, cfg);
            } catch (const Error& e) {
                if (e.error_class() != ErrorClass::Numeric) throw;
                continue;  // an unlucky slice is not worth failing over
            }
            for (Complex w0 : roots.roots) {
                EvalResult image = eval_affine(f, z0, w0);
                if (image.kind == EvalResult::Kind::Finite)
                    values.emplace_back(image.z, image.w);
            }
        }
    }
    return values;
}

long long numeric_degree_once(const Blaschke2D& f,
                              const std::vector<std::pair<Complex, Complex>>& critical,
                              SplitMix64& rng, const SolverConfig& cfg) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        double mz = rng.uniform(0.45, 0.55), az = rng.uniform(0.0, 2.0 * M_PI);
        double mw = rng.uniform(0.45, 0.55), aw = rng.uniform(0.0, 2.0 * M_PI);
        Complex tz = mz * Complex{std::cos(az), std::sin(az)};
        Complex tw = mw * Complex{std::cos(aw), std::sin(aw)};
        bool near_critical = false;
        for (const auto& [vz, vw] : critical)
            if (std::abs(tz - vz) < 1e-4 && std::abs(tw - vw) < 1e-4) {
                near_critical = true;
                break;
            }
        if (near_critical) continue;
        SolutionSet sols = solve_system(f, tz, tw, cfg);
        return static_cast<long long>(sols.points.size());
    }
    throw NonConvergence("no target away from the sampled critical values");
}

}  // namespace

long long topological_degree(const Blaschke2D& f, DegreeStrategy strategy, std::uint64_t seed,
                             const SolverConfig& cfg) {
    switch (strategy) {
        case DegreeStrategy::ExactGeneric: {
            GenericityReport report = is_generic(f);
            if (!report.generic)
                throw PreconditionViolation("exact-generic degree needs a generic map: " +
                                            report.reasons.front());
            return f.N().m * f.N().q + f.N().n * f.N().p;
        }
        case DegreeStrategy::Monomial:
            if (!f.all_zeros_zero())
                throw PreconditionViolation("monomial degree needs all zeros at the origin");
            return f.N().det();
        case DegreeStrategy::Numeric: {
            std::vector<std::pair<Complex, Complex>> critical = sample_critical_values(f, cfg);
            SplitMix64 rng(seed ^ 0x746f706f6c6f6779ULL);
            long long first = numeric_degree_once(f, critical, rng, cfg);
            long long second = numeric_degree_once(f, critical, rng, cfg);
            if (first != second)
                throw SolverDeficiency("numeric degree unstable: " + std::to_string(first) +
                                       " vs " + std::to_string(second));
            return first;
        }
    }
    throw PreconditionViolation("unknown degree strategy");
}

}  // namespace blaschke2d
