#include "blaschke2d/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace blaschke2d {

double ComplexPoly::norm_inf() const {
    double m = 0.0;
    for (const Complex& v : c) m = std::max(m, std::abs(v));
    return m;
}

Complex ComplexPoly::eval(Complex x) const {
    Complex acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double ComplexPoly::scale_at(double ax) const {
    double acc = 0.0, p = 1.0, b = std::max(1.0, ax);
    for (const Complex& v : c) {
        acc += std::abs(v) * p;
        p *= b;
    }
    return acc;
}

ComplexPoly ComplexPoly::derivative() const {
    ComplexPoly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * static_cast<double>(i));
    return d;
}

ComplexPoly ComplexPoly::trimmed(double rel) const {
    double cutoff = norm_inf() * rel;
    ComplexPoly out = *this;
    while (!out.c.empty() && std::abs(out.c.back()) <= cutoff) out.c.pop_back();
    return out;
}

ComplexPoly to_complex_poly(const UniPoly& p) {
    ComplexPoly out;
    out.c.reserve(p.coeffs().size());
    for (const auto& g : p.coeffs()) out.c.push_back(g.to_complex());
    return out;
}

namespace {

ComplexPoly mul(const ComplexPoly& a, const ComplexPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ComplexPoly out;
    out.c.assign(a.c.size() + b.c.size() - 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    return out;
}

// Newton polish keeping the best scaled residual seen.
Complex polish_root(const ComplexPoly& p, const ComplexPoly& dp, Complex r, int iters) {
    Complex best = r;
    double best_res = std::abs(p.eval(r));
    for (int it = 0; it < iters; ++it) {
        Complex d = dp.eval(r);
        if (std::abs(d) < 1e-300) break;
        r -= p.eval(r) / d;
        double res = std::abs(p.eval(r));
        if (res < best_res) {
            best_res = res;
            best = r;
        }
    }
    return best;
}

}  // namespace

RootSet univariate_roots(const ComplexPoly& p, const SolverConfig& cfg) {
    ComplexPoly q = p.trimmed(cfg.trim_rel);
    if (q.degree() < 1) throw PreconditionViolation("root-finding needs degree >= 1");

    int n = q.degree();
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -q.c[static_cast<std::size_t>(i)] / q.c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw NonConvergence("companion eigensolver failed");

    ComplexPoly dq = q.derivative();
    std::vector<Complex> roots(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        roots[static_cast<std::size_t>(i)] = polish_root(q, dq, es.eigenvalues()(i),
                                                         cfg.newton_iters);

    // Merge clusters (multiple roots polish poorly and land close together).
    std::vector<bool> used(roots.size(), false);
    RootSet out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> group{i};
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            double tol = cfg.cluster_radius * std::max(1.0, std::abs(roots[i]));
            if (std::abs(roots[i] - roots[j]) <= tol) {
                group.push_back(j);
                used[j] = true;
            }
        }
        Complex centroid{0.0, 0.0};
        for (std::size_t g : group) centroid += roots[g];
        centroid /= static_cast<double>(group.size());
        out.roots.push_back(group.size() > 1 ? centroid : roots[i]);
        out.multiplicity.push_back(static_cast<int>(group.size()));
    }

    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        double res = std::abs(q.eval(out.roots[i]));
        double scale = q.scale_at(std::abs(out.roots[i]));
        // Multiple roots flatten the polynomial: |p| near an m-fold root is
        // of order (residual radius)^m, so relax by the cluster tolerance.
        double allowed = cfg.root_residual * scale;
        for (int k = 1; k < out.multiplicity[i]; ++k) allowed *= cfg.cluster_radius * 10.0;
        allowed = std::max(allowed, cfg.root_residual * scale);
        if (res > std::max(allowed, 1e-300))
            throw NonConvergence("root residual above tolerance");
    }
    return out;
}

int BivarPoly::wdeg() const {
    for (int j = static_cast<int>(by_w.size()) - 1; j >= 0; --j)
        if (!by_w[static_cast<std::size_t>(j)].is_zero()) return j;
    return -1;
}

int BivarPoly::zdeg() const {
    int d = -1;
    for (const auto& row : by_w) d = std::max(d, row.degree());
    return d;
}

ComplexPoly BivarPoly::at_z(Complex z0) const {
    ComplexPoly out;
    out.c.reserve(by_w.size());
    for (const auto& row : by_w) out.c.push_back(row.eval(z0));
    while (!out.c.empty() && out.c.back() == Complex{0.0, 0.0}) out.c.pop_back();
    return out;
}

BivarPoly BivarPoly::swapped() const {
    BivarPoly out;
    out.by_w.assign(static_cast<std::size_t>(zdeg()) + 1, ComplexPoly{});
    for (std::size_t j = 0; j < by_w.size(); ++j) {
        for (std::size_t i = 0; i < by_w[j].c.size(); ++i) {
            ComplexPoly& row = out.by_w[i];
            if (row.c.size() <= j) row.c.resize(j + 1, Complex{0.0, 0.0});
            row.c[j] = by_w[j].c[i];
        }
    }
    return out;
}

double BivarPoly::scale_at(double az, double aw) const {
    double acc = 0.0, pw = 1.0, bw = std::max(1.0, aw);
    for (const auto& row : by_w) {
        acc += row.scale_at(az) * pw;
        pw *= bw;
    }
    return acc;
}

Complex BivarPoly::eval(Complex z, Complex w) const {
    Complex acc{0.0, 0.0};
    for (auto it = by_w.rbegin(); it != by_w.rend(); ++it) acc = acc * w + it->eval(z);
    return acc;
}

BivarPoly BivarPoly::dz() const {
    BivarPoly out;
    out.by_w.reserve(by_w.size());
    for (const auto& row : by_w) out.by_w.push_back(row.derivative());
    return out;
}

BivarPoly BivarPoly::dw() const {
    BivarPoly out;
    for (std::size_t j = 1; j < by_w.size(); ++j) {
        ComplexPoly row = by_w[j];
        for (auto& v : row.c) v *= static_cast<double>(j);
        out.by_w.push_back(std::move(row));
    }
    return out;
}

namespace {

BivarPoly trim_bivar(BivarPoly p, double rel) {
    double m = 0.0;
    for (const auto& row : p.by_w) m = std::max(m, row.norm_inf());
    for (auto& row : p.by_w) {
        for (auto& v : row.c)
            if (std::abs(v) <= m * rel) v = Complex{0.0, 0.0};
        while (!row.c.empty() && row.c.back() == Complex{0.0, 0.0}) row.c.pop_back();
    }
    while (!p.by_w.empty() && p.by_w.back().is_zero()) p.by_w.pop_back();
    return p;
}

// det of the Sylvester matrix of (a, b) in one variable, b's rows first —
// the convention fixed by Res_w(w - z, w + z) = -2z.  Also reports the
// Hadamard bound so callers can judge "numerically zero".
Complex sylvester_det(const ComplexPoly& a, const ComplexPoly& b, int da, int db,
                      double* hadamard) {
    int size = da + db;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
    auto coeff = [](const ComplexPoly& p, int k) {
        return (k >= 0 && k < static_cast<int>(p.c.size())) ? p.c[static_cast<std::size_t>(k)]
                                                            : Complex{0.0, 0.0};
    };
    for (int r = 0; r < da; ++r)  // rows of b
        for (int k = 0; k <= db; ++k) m(r, r + k) = coeff(b, db - k);
    for (int r = 0; r < db; ++r)  // rows of a
        for (int k = 0; k <= da; ++k) m(da + r, r + k) = coeff(a, da - k);
    if (hadamard) {
        double h = 1.0;
        for (int r = 0; r < size; ++r) h *= m.row(r).norm() + 1e-300;
        *hadamard = h;
    }
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
}

}  // namespace

ComplexPoly resultant_eliminate(const BivarPoly& p1, const BivarPoly& p2, Var eliminate,
                                const SolverConfig& cfg) {
    BivarPoly a = eliminate == Var::W ? p1 : p1.swapped();
    BivarPoly b = eliminate == Var::W ? p2 : p2.swapped();
    a = trim_bivar(std::move(a), cfg.trim_rel);
    b = trim_bivar(std::move(b), cfg.trim_rel);
    int da = a.wdeg(), db = b.wdeg();
    if (da < 0 || db < 0) throw PreconditionViolation("resultant of a zero polynomial");
    if (da == 0 && db == 0) return ComplexPoly{{Complex{1.0, 0.0}}};

    int bound = std::max(0, a.zdeg()) * db + std::max(0, b.zdeg()) * da;
    int samples = bound + 1;
    const double rho = 1.3;

    std::vector<Complex> values(static_cast<std::size_t>(samples));
    double max_abs = 0.0, max_hadamard = 0.0;
    for (int k = 0; k < samples; ++k) {
        double ang = 2.0 * M_PI * k / samples;
        Complex zk = rho * Complex{std::cos(ang), std::sin(ang)};
        double had = 0.0;
        // restrictions keep the global degrees: missing high coefficients
        // become zero entries rather than shrinking the matrix
        ComplexPoly ra = a.at_z(zk), rb = b.at_z(zk);
        ra.c.resize(static_cast<std::size_t>(da) + 1, Complex{0.0, 0.0});
        rb.c.resize(static_cast<std::size_t>(db) + 1, Complex{0.0, 0.0});
        values[static_cast<std::size_t>(k)] = sylvester_det(ra, rb, da, db, &had);
        max_abs = std::max(max_abs, std::abs(values[static_cast<std::size_t>(k)]));
        max_hadamard = std::max(max_hadamard, had);
    }
    if (max_abs <= max_hadamard * 1e-12)
        throw DegenerateSystem("resultant vanishes identically (shared factor?)");

    ComplexPoly out;
    out.c.assign(static_cast<std::size_t>(bound) + 1, Complex{0.0, 0.0});
    double rho_pow = 1.0;
    for (int j = 0; j <= bound; ++j) {
        Complex acc{0.0, 0.0};
        for (int k = 0; k < samples; ++k) {
            double ang = -2.0 * M_PI * j * k / samples;
            acc += values[static_cast<std::size_t>(k)] * Complex{std::cos(ang), std::sin(ang)};
        }
        out.c[static_cast<std::size_t>(j)] = acc / (static_cast<double>(samples) * rho_pow);
        rho_pow *= rho;
    }
    return out.trimmed(cfg.trim_rel);
}

std::pair<BivarPoly, BivarPoly> clear_denominators(const Blaschke2D& f, Complex tz, Complex tw) {
    auto outer = [](const ComplexPoly& pz, const ComplexPoly& pw, Complex s) {
        BivarPoly out;
        out.by_w.reserve(pw.c.size());
        for (const Complex& cw : pw.c) {
            ComplexPoly row = pz;
            for (auto& v : row.c) v *= cw * s;
            out.by_w.push_back(std::move(row));
        }
        return out;
    };
    auto sub = [](BivarPoly x, const BivarPoly& y) {
        if (x.by_w.size() < y.by_w.size()) x.by_w.resize(y.by_w.size());
        for (std::size_t j = 0; j < y.by_w.size(); ++j) {
            ComplexPoly& row = x.by_w[j];
            if (row.c.size() < y.by_w[j].c.size()) row.c.resize(y.by_w[j].c.size());
            for (std::size_t i = 0; i < y.by_w[j].c.size(); ++i) row.c[i] -= y.by_w[j].c[i];
        }
        return x;
    };

    ComplexPoly pa = to_complex_poly(f.A().numerator()), qa = to_complex_poly(f.A().denominator());
    ComplexPoly pb = to_complex_poly(f.B().numerator()), qb = to_complex_poly(f.B().denominator());
    ComplexPoly pc = to_complex_poly(f.C().numerator()), qc = to_complex_poly(f.C().denominator());
    ComplexPoly pd = to_complex_poly(f.D().numerator()), qd = to_complex_poly(f.D().denominator());

    BivarPoly p1 = sub(outer(pa, pb, f.theta1().to_complex()), outer(qa, qb, tz));
    BivarPoly p2 = sub(outer(pc, pd, f.theta2().to_complex()), outer(qc, qd, tw));
    return {std::move(p1), std::move(p2)};
}

namespace {

struct Candidate {
    Complex z, w;
    double residual;
    bool flagged;
};

// Joint scaled residual of the cleared system at (z, w).
double joint_residual(const BivarPoly& p1, const BivarPoly& p2, Complex z, Complex w) {
    double az = std::abs(z), aw = std::abs(w);
    double r1 = std::abs(p1.eval(z, w)) / std::max(p1.scale_at(az, aw), 1e-300);
    double r2 = std::abs(p2.eval(z, w)) / std::max(p2.scale_at(az, aw), 1e-300);
    return std::max(r1, r2);
}

struct SystemDerivatives {
    BivarPoly p1z, p1w, p2z, p2w;
};

// Damped Newton: accept only residual-decreasing steps so a mediocre start
// cannot stall just under the acceptance threshold and survive dedup.
void newton_polish_2d(const BivarPoly& p1, const BivarPoly& p2, const SystemDerivatives& der,
                      Complex& z, Complex& w, int iters) {
    double res = joint_residual(p1, p2, z, w);
    for (int it = 0; it < 4 * iters && res > 1e-15; ++it) {
        Complex f1 = p1.eval(z, w), f2 = p2.eval(z, w);
        Complex a = der.p1z.eval(z, w), b = der.p1w.eval(z, w);
        Complex c = der.p2z.eval(z, w), d = der.p2w.eval(z, w);
        Complex det = a * d - b * c;
        if (std::abs(det) < 1e-300) break;
        Complex dz = (f1 * d - f2 * b) / det;
        Complex dw = (a * f2 - c * f1) / det;
        double t = 1.0;
        bool improved = false;
        for (int trial = 0; trial < 6; ++trial, t *= 0.5) {
            Complex nz = z - t * dz, nw = w - t * dw;
            double nres = joint_residual(p1, p2, nz, nw);
            if (nres < res) {
                z = nz;
                w = nw;
                res = nres;
                improved = true;
                break;
            }
        }
        if (!improved) break;  // local minimum of the residual; nothing to gain
    }
}

std::vector<Candidate> solve_one_order(const BivarPoly& p1, const BivarPoly& p2,
                                       const std::vector<ComplexPoly>& denominators,
                                       Var eliminate, const SolverConfig& cfg) {
    ComplexPoly res = resultant_eliminate(p1, p2, eliminate, cfg);
    if (res.degree() < 1) return {};  // no finite solutions in this variable
    RootSet first = univariate_roots(res, cfg);

    // In the W-elimination order the resultant roots are z-values.
    const BivarPoly& q1 = eliminate == Var::W ? p1 : p1.swapped();
    const BivarPoly& q2 = eliminate == Var::W ? p2 : p2.swapped();

    SystemDerivatives der{p1.dz(), p1.dw(), p2.dz(), p2.dw()};

    std::vector<std::vector<Candidate>> buckets(first.roots.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
    for (std::size_t i = 0; i < first.roots.size(); ++i) {
        try {
            Complex r = first.roots[i];
            std::vector<Complex> seconds;
            for (const BivarPoly* q : {&q1, &q2}) {
                ComplexPoly slice = q->at_z(r).trimmed(cfg.trim_rel);
                if (slice.degree() < 1) continue;
                RootSet rs = univariate_roots(slice, cfg);
                seconds.insert(seconds.end(), rs.roots.begin(), rs.roots.end());
            }
            for (Complex s : seconds) {
                Complex z = eliminate == Var::W ? r : s;
                Complex w = eliminate == Var::W ? s : r;
                newton_polish_2d(p1, p2, der, z, w, cfg.newton_iters);
                // Escapes toward infinity keep a small *scaled* residual; a
                // magnitude beyond the infinity ratio is a root at infinity,
                // not an affine solution.
                if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
                    !std::isfinite(w.real()) || !std::isfinite(w.imag()))
                    continue;
                if (std::max(std::abs(z), std::abs(w)) > cfg.lc_infinity_ratio) continue;
                double residual = joint_residual(p1, p2, z, w);
                if (residual > cfg.joint_residual) continue;
                // denominator zeros solve the cleared system without being
                // preimages of anything
                bool on_pole = false;
                for (std::size_t k = 0; k < denominators.size() && !on_pole; ++k) {
                    const ComplexPoly& den = denominators[k];
                    Complex x = (k % 2 == 0) ? z : w;
                    double scale = std::max(den.scale_at(std::abs(x)), 1e-300);
                    on_pole = std::abs(den.eval(x)) <= 1e-8 * scale;
                }
                if (on_pole) continue;
                Complex jz1 = der.p1z.eval(z, w), jw1 = der.p1w.eval(z, w);
                Complex jz2 = der.p2z.eval(z, w), jw2 = der.p2w.eval(z, w);
                double jscale = std::max(
                    {std::abs(jz1) * std::abs(jw2), std::abs(jw1) * std::abs(jz2), 1e-300});
                bool flagged =
                    std::abs(jz1 * jw2 - jw1 * jz2) <= cfg.singular_jacobian * jscale;
                buckets[i].push_back({z, w, residual, flagged});
            }
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    std::vector<Candidate> all;
    for (auto& b : buckets) all.insert(all.end(), b.begin(), b.end());

    // Deduplicate at the relative merge radius, keeping the best residual.
    std::vector<Candidate> unique;
    for (const Candidate& cand : all) {
        bool merged = false;
        for (Candidate& u : unique) {
            double tol = cfg.dedup_radius *
                         std::max({1.0, std::abs(u.z), std::abs(u.w)});
            if (std::abs(u.z - cand.z) <= tol && std::abs(u.w - cand.w) <= tol) {
                if (cand.residual < u.residual) {
                    double keep_flag = u.flagged || cand.flagged;
                    u = cand;
                    u.flagged = keep_flag;
                }
                merged = true;
                break;
            }
        }
        if (!merged) unique.push_back(cand);
    }
    return unique;
}

}  // namespace

SolutionSet solve_system(const Blaschke2D& f, Complex target_z, Complex target_w,
                         const SolverConfig& cfg) {
    auto [p1, p2] = clear_denominators(f, target_z, target_w);
    std::vector<ComplexPoly> dens{
        mul(to_complex_poly(f.A().denominator()), to_complex_poly(f.C().denominator())),
        mul(to_complex_poly(f.B().denominator()), to_complex_poly(f.D().denominator()))};

    std::vector<Candidate> via_w = solve_one_order(p1, p2, dens, Var::W, cfg);
    std::vector<Candidate> via_z = solve_one_order(p1, p2, dens, Var::Z, cfg);
    if (via_w.size() != via_z.size())
        throw SolverDeficiency("solution count differs between elimination orders: " +
                               std::to_string(via_w.size()) + " vs " +
                               std::to_string(via_z.size()));

    std::sort(via_w.begin(), via_w.end(), [](const Candidate& a, const Candidate& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
        if (a.w.real() != b.w.real()) return a.w.real() < b.w.real();
        return a.w.imag() < b.w.imag();
    });

    SolutionSet out;
    for (const Candidate& cand : via_w) {
        out.points.emplace_back(cand.z, cand.w);
        out.residuals.push_back(cand.residual);
        out.multiplicity_flags.push_back(cand.flagged);
    }
    return out;
}

}  // namespace blaschke2d
