#include "spectral/canonical.hpp"

#include <algorithm>
#include <cmath>

#include "spectral/oscillator.hpp"
#include "spectral/quadrature.hpp"

namespace spectral {

namespace {

// A = H J^{-1} with J = [[0,-1],[1,0]]: the generator of W' = z W A.
template <typename Mat, typename HMat>
Mat generator(const HMat& h) {
    Mat a;
    a << -h(0, 1), h(0, 0), -h(1, 1), h(0, 1);
    return a;
}

// exp(z h A) = cos(theta) I + sinc(theta) z h A, theta^2 = z^2 h^2 det H.
Eigen::Matrix2cd panel_exp(const Eigen::Matrix2d& hbar, double h, Complex z) {
    double d = hbar.determinant();
    auto cs = cs_pair(z * z * d, h);
    Eigen::Matrix2cd a = generator<Eigen::Matrix2cd>(hbar);
    return cs.c * Eigen::Matrix2cd::Identity() + z * cs.s * a;
}

struct PanelExpDz {
    Eigen::Matrix2cd e, e_z;
};

PanelExpDz panel_exp_dz(const Eigen::Matrix2d& hbar, double h, Complex z) {
    double d = hbar.determinant();
    auto cs = cs_pair(z * z * d, h);
    Eigen::Matrix2cd a = generator<Eigen::Matrix2cd>(hbar);
    PanelExpDz out;
    out.e = cs.c * Eigen::Matrix2cd::Identity() + z * cs.s * a;
    // dC/dz = -h z d S, d(z S)/dz = h C
    out.e_z = (-h * z * d * cs.s) * Eigen::Matrix2cd::Identity() + (h * cs.c) * a;
    return out;
}

Complex moebius(const Eigen::Matrix2cd& w, const BoundaryCoefficient& gamma, Complex z) {
    Complex num, den;
    if (std::holds_alternative<Infinity>(gamma)) {
        num = w(0, 0);
        den = w(1, 0);
    } else {
        Complex g = std::holds_alternative<double>(gamma)
                        ? Complex(std::get<double>(gamma), 0)
                        : std::get<std::function<Complex(Complex)>>(gamma)(z);
        num = w(0, 0) * g + w(0, 1);
        den = w(1, 0) * g + w(1, 1);
    }
    double scale = std::abs(w(0, 0)) + std::abs(w(0, 1)) + std::abs(w(1, 0)) +
                   std::abs(w(1, 1)) + 1e-300;
    if (std::abs(den) < 1e-13 * scale)
        throw NumericalError("weyl_function_canonical: degenerate denominator",
                             std::abs(den) / scale);
    return num / den;
}

}  // namespace

Hamiltonian::Hamiltonian(double ell_in, Potential h11_in, Potential h12_in, Potential h22_in,
                         bool singular, bool normed)
    : ell(ell_in),
      singular_end(singular),
      trace_normed(normed),
      h11(std::move(h11_in)),
      h12(std::move(h12_in)),
      h22(std::move(h22_in)) {
    if (std::isinf(ell)) {
        ell_infinite = true;
    } else if (!(ell > 0)) {
        throw std::invalid_argument("Hamiltonian: length must be positive");
    }
    // spot-check nonnegativity away from a singular end
    double probe_end = ell_infinite ? 8.0 : ell * (singular_end ? 0.99 : 1.0);
    for (double x : linspace(probe_end * 1e-3, probe_end, 17)) {
        Eigen::Matrix2d m = at(x);
        if (m(0, 0) < -1e-12 || m(1, 1) < -1e-12 ||
            m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1) < -1e-9 * (1 + m.squaredNorm()))
            throw std::invalid_argument("Hamiltonian: H(x) must be nonnegative");
        if (trace_normed && std::abs(m(0, 0) + m(1, 1) - 1.0) > 1e-9)
            throw std::invalid_argument("Hamiltonian: trace-normed flag violated");
    }
}

Eigen::Matrix2d Hamiltonian::at(double x) const {
    Eigen::Matrix2d m;
    double offdiag = h12(x);
    m << h11(x), offdiag, offdiag, h22(x);
    return m;
}

CanonicalPanels canonical_panels(const Hamiltonian& h, double x, std::size_t min_panels,
                                 double panels_per_efold) {
    if (!(x > 0)) throw std::invalid_argument("canonical_panels: need x > 0");
    if (!h.ell_infinite && x > h.ell * (1 + 1e-12))
        throw std::invalid_argument("canonical_panels: x beyond the system length");
    bool pw_const = h.h11.piecewise_constant() && h.h12.piecewise_constant() &&
                    h.h22.piecewise_constant();

    std::vector<double> coarse{0.0};
    for (const auto* p : {&h.h11, &h.h12, &h.h22})
        for (double b : p->breakpoints())
            if (b > 0 && b < x) coarse.push_back(b);
    coarse.push_back(x);
    std::sort(coarse.begin(), coarse.end());
    coarse.erase(std::unique(coarse.begin(), coarse.end(),
                             [&](double u, double v) { return std::abs(u - v) < 1e-14 * x; }),
                 coarse.end());

    CanonicalPanels out;
    if (pw_const) {
        out.edges = coarse;
    } else {
        // geometric refinement toward a singular right end
        double sing_start = x;
        if (h.singular_end && !h.ell_infinite && x > 0.9 * h.ell)
            sing_start = 0.9 * h.ell;
        double hmax = std::max(sing_start, 1e-12) / static_cast<double>(min_panels);
        out.edges.push_back(0.0);
        for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
            double lo = coarse[i], hi = std::min(coarse[i + 1], sing_start);
            if (hi > lo) {
                auto n = static_cast<std::size_t>(std::ceil((hi - lo) / hmax));
                for (std::size_t j = 1; j <= n; ++j)
                    out.edges.push_back(lo + (hi - lo) * static_cast<double>(j) /
                                                 static_cast<double>(n));
            }
        }
        if (sing_start < x) {
            double d0 = h.ell - sing_start, dx = h.ell - x;
            auto n = static_cast<std::size_t>(
                std::ceil(panels_per_efold * std::log(d0 / dx)));
            n = std::max<std::size_t>(n, 1);
            for (std::size_t j = 1; j <= n; ++j)
                out.edges.push_back(h.ell - d0 * std::pow(dx / d0, static_cast<double>(j) /
                                                                       static_cast<double>(n)));
        }
    }
    out.hbar.reserve(out.edges.size() - 1);
    for (std::size_t p = 0; p + 1 < out.edges.size(); ++p)
        out.hbar.push_back(h.at(0.5 * (out.edges[p] + out.edges[p + 1])));
    return out;
}

Eigen::Matrix2cd transfer_matrix_W(const Hamiltonian& h, double x, Complex z) {
    Eigen::Matrix2cd w = Eigen::Matrix2cd::Identity();
    if (x == 0 || z == Complex(0, 0)) return w;
    auto panels = canonical_panels(h, x);
    for (std::size_t p = 0; p + 1 < panels.edges.size(); ++p)
        w = w * panel_exp(panels.hbar[p], panels.edges[p + 1] - panels.edges[p], z);
    double det_err = std::abs(w.determinant() - 1.0);
    if (det_err > 1e-9 * (1 + w.squaredNorm()))
        throw NumericalError("transfer_matrix_W: det W drifted from 1", det_err);
    return w;
}

std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> transfer_matrix_W_dz(const Hamiltonian& h,
                                                                   double x, Complex z) {
    Eigen::Matrix2cd w = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd wz = Eigen::Matrix2cd::Zero();
    if (x == 0) return {w, wz};
    auto panels = canonical_panels(h, x);
    for (std::size_t p = 0; p + 1 < panels.edges.size(); ++p) {
        auto pe = panel_exp_dz(panels.hbar[p], panels.edges[p + 1] - panels.edges[p], z);
        wz = wz * pe.e + w * pe.e_z;
        w = w * pe.e;
    }
    return {w, wz};
}

Complex weyl_function_canonical(const Hamiltonian& h, const BoundaryCoefficient& gamma,
                                Complex z, double tol) {
    if (!h.ell_infinite && !h.singular_end)
        return moebius(transfer_matrix_W(h, h.ell, z), gamma, z);
    // limit-point end: evaluate at x -> ell (or x -> infinity); the limit is
    // gamma-independent, successive-difference stopping rule
    Complex prev = 0;
    bool have_prev = false;
    for (int j = 4; j <= 40; ++j) {
        double x = h.ell_infinite ? std::pow(2.0, j - 3)
                                  : h.ell * (1.0 - std::pow(2.0, -j));
        Complex m = moebius(transfer_matrix_W(h, x, z), gamma, z);
        if (have_prev && std::abs(m - prev) < tol * (1 + std::abs(m))) return m;
        prev = m;
        have_prev = true;
    }
    throw NumericalError("weyl_function_canonical: x -> end limit did not converge",
                         std::abs(prev));
}

SpectralMeasure canonical_spectral_measure(const Hamiltonian& h,
                                           const BoundaryCoefficient& gamma,
                                           std::size_t count_per_side) {
    if (std::holds_alternative<std::function<Complex(Complex)>>(gamma))
        throw std::invalid_argument(
            "canonical_spectral_measure: gamma must be a real constant or infinity");
    if (h.ell_infinite)
        throw std::invalid_argument(
            "canonical_spectral_measure: infinite systems are not scanned");
    double x_eval = h.singular_end ? h.ell * (1.0 - 1e-5) : h.ell;
    auto panels = canonical_panels(h, x_eval);

    auto w_and_dz = [&](double lam) {
        Eigen::Matrix2d w = Eigen::Matrix2d::Identity();
        Eigen::Matrix2d wz = Eigen::Matrix2d::Zero();
        for (std::size_t p = 0; p + 1 < panels.edges.size(); ++p) {
            double hh = panels.edges[p + 1] - panels.edges[p];
            const auto& hb = panels.hbar[p];
            double d = hb.determinant();
            auto cs = cs_pair(lam * lam * d, hh);
            Eigen::Matrix2d a = generator<Eigen::Matrix2d>(hb);
            Eigen::Matrix2d e = cs.c * Eigen::Matrix2d::Identity() + lam * cs.s * a;
            Eigen::Matrix2d ez =
                (-hh * lam * d * cs.s) * Eigen::Matrix2d::Identity() + (hh * cs.c) * a;
            wz = wz * e + w * ez;
            w = w * e;
        }
        return std::make_pair(w, wz);
    };
    double gval = std::holds_alternative<double>(gamma) ? std::get<double>(gamma) : 0;
    bool ginf = std::holds_alternative<Infinity>(gamma);
    auto dfun = [&](double lam) {
        Eigen::Matrix2d w = Eigen::Matrix2d::Identity();
        for (std::size_t p = 0; p + 1 < panels.edges.size(); ++p) {
            double hh = panels.edges[p + 1] - panels.edges[p];
            const auto& hb = panels.hbar[p];
            auto cs = cs_pair(lam * lam * hb.determinant(), hh);
            Eigen::Matrix2d a = generator<Eigen::Matrix2d>(hb);
            w = w * (cs.c * Eigen::Matrix2d::Identity() + lam * cs.s * a);
        }
        return ginf ? w(1, 0) : w(1, 0) * gval + w(1, 1);
    };

    double a_total = a_of_l(h, x_eval);
    if (!(a_total > 0))
        throw NumericalError("canonical_spectral_measure: a(l) = 0, no scan scale");
    double spacing = kPi / a_total;
    double step = spacing / 8.0;

    // collect sign-change brackets on both sides of 0
    std::vector<std::pair<double, double>> brackets;
    auto scan_side = [&](double sign) {
        std::size_t found = 0;
        // both sides start at -step/2 so the cell straddling 0 is scanned
        // exactly once (by the positive sweep)
        double prev_edge = -step / 2;
        double fprev = dfun(prev_edge);
        long guard = 0;
        while (found < count_per_side) {
            double next_edge = prev_edge + sign * step;
            double fnext = dfun(next_edge);
            if ((fprev > 0) != (fnext > 0) || fnext == 0.0) {
                brackets.emplace_back(std::min(prev_edge, next_edge),
                                      std::max(prev_edge, next_edge));
                ++found;
            }
            prev_edge = next_edge;
            fprev = fnext;
            if (++guard > static_cast<long>(count_per_side) * 64 + 4096)
                throw NumericalError("canonical_spectral_measure: eigenvalue scan stalled");
        }
    };
    scan_side(+1.0);
    if (count_per_side > 0) scan_side(-1.0);

    std::vector<Atom> atoms(brackets.size());
    parallel_for(brackets.size(), [&](std::size_t i) {
        double blo = brackets[i].first, bhi = brackets[i].second;
        double flo = dfun(blo);
        for (int it = 0; it < 200 && bhi - blo > 1e-13 * (1 + std::abs(blo) + std::abs(bhi));
             ++it) {
            double mid = 0.5 * (blo + bhi);
            double fm = dfun(mid);
            if ((fm > 0) == (flo > 0)) {
                blo = mid;
                flo = fm;
            } else {
                bhi = mid;
            }
        }
        double lam = 0.5 * (blo + bhi);
        auto [w, wz] = w_and_dz(lam);
        double num = ginf ? w(0, 0) : w(0, 0) * gval + w(0, 1);
        double dprime = ginf ? wz(1, 0) : wz(1, 0) * gval + wz(1, 1);
        double tau = -num / dprime;
        if (!(tau > 0) || !std::isfinite(tau))
            throw NumericalError("canonical_spectral_measure: nonpositive residue weight", tau);
        atoms[i] = {lam, tau};
    });
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });

    std::optional<TailDescriptor> tail;
    std::size_t n = atoms.size();
    if (count_per_side >= 8) {
        // positive side is the back of the sorted list, negative side the front
        const Atom& p_last = atoms[n - 1];
        const Atom& p_prev = atoms[n - 6];
        const Atom& n_last = atoms[0];
        const Atom& n_prev = atoms[5];
        TailDescriptor t;
        t.p = 1;
        t.c = (p_last.location - p_prev.location) / 5.0;
        auto k_last = static_cast<double>(count_per_side - 1);
        t.d = p_last.location - t.c * k_last;
        t.d_neg = -n_last.location - t.c * k_last;
        t.two_sided = true;
        t.k_start = static_cast<long>(count_per_side);
        // weight law tau = w |lambda|^{-q} from the positive side
        double lr = std::log(std::abs(p_last.location) / std::abs(p_prev.location));
        double wr = std::log(p_last.weight / p_prev.weight);
        t.q = std::abs(lr) > 1e-12 ? -wr / lr : 0.0;
        if (std::abs(t.q) < 1e-3) t.q = 0.0;
        t.w = p_last.weight * std::pow(std::abs(p_last.location), t.q);
        double sym = std::abs(n_last.weight * std::pow(std::abs(n_last.location), t.q) - t.w) /
                     t.w;
        if (t.c > 0 && sym < 0.05 &&
            t.c * static_cast<double>(t.k_start) + t.d > p_last.location &&
            t.c * static_cast<double>(t.k_start) + t.d_neg > -n_last.location)
            tail = t;
        (void)n_prev;
    }
    return SpectralMeasure(std::move(atoms), {}, tail);
}

Complex ScrewFunction::evaluate(double t) const {
    if (provenance) {
        Complex v = provenance->integrate_kernel(kernel, t);
        if (kernel == Kernel::Screw) v += Complex(0, beta * t);
        return v;
    }
    return interpolate_samples(grid, values, t);
}

ScrewFunction screw_from_measure(const std::shared_ptr<const SpectralMeasure>& measure,
                                 double beta, const std::vector<double>& t_grid,
                                 double domain_bound) {
    if (!measure) throw std::invalid_argument("screw_from_measure: null measure");
    ScrewFunction g;
    g.grid = t_grid;
    g.values.resize(t_grid.size());
    g.beta = beta;
    g.kernel = Kernel::Screw;
    g.provenance = measure;
    g.domain_bound = domain_bound;
    for (double t : t_grid)
        g.domain_bound = std::max(g.domain_bound, std::abs(t));
    parallel_for(t_grid.size(), [&](std::size_t i) {
        g.values[i] = measure->integrate_kernel(Kernel::Screw, t_grid[i]) +
                      Complex(0, beta * t_grid[i]);
    });
    return g;
}

ScrewFunction f_from_measure(const std::shared_ptr<const SpectralMeasure>& measure,
                             const std::vector<double>& t_grid, double domain_bound) {
    if (!measure) throw std::invalid_argument("f_from_measure: null measure");
    if (measure->tail() && measure->tail()->p * measure->tail()->q <= 1.0)
        throw std::invalid_argument("f_from_measure: measure has infinite total mass");
    ScrewFunction f;
    f.grid = t_grid;
    f.values.resize(t_grid.size());
    f.kernel = Kernel::Exponential;
    f.provenance = measure;
    f.domain_bound = domain_bound;
    for (double t : t_grid)
        f.domain_bound = std::max(f.domain_bound, std::abs(t));
    parallel_for(t_grid.size(), [&](std::size_t i) {
        f.values[i] = measure->integrate_kernel(Kernel::Exponential, t_grid[i]);
    });
    return f;
}

double a_of_l(const Hamiltonian& h, double l) {
    if (l == 0) return 0;
    if (l < 0 || (!h.ell_infinite && l > h.ell * (1 + 1e-12)))
        throw std::invalid_argument("a_of_l: l outside [0, ell]");
    double l_eff = (!h.ell_infinite && h.singular_end)
                       ? std::min(l, h.ell * (1.0 - 1e-12))
                       : l;
    auto density = [&](double x) {
        Eigen::Matrix2d m = h.at(x);
        return std::sqrt(std::max(0.0, m.determinant()));
    };
    auto panels = canonical_panels(h, l_eff, 400);
    return gl16_composite(density, panels.edges);
}

double l_of_a(const Hamiltonian& h, double a) {
    if (a == 0) return 0;
    double l_hi = h.ell_infinite ? 1.0 : h.ell;
    if (h.ell_infinite) {  // expand until a is covered
        int guard = 0;
        while (a_of_l(h, l_hi) < a) {
            l_hi *= 2;
            if (++guard > 60) throw std::invalid_argument("l_of_a: a exceeds a(ell)");
        }
    } else if (a > a_of_l(h, l_hi) * (1 + 1e-12)) {
        throw std::invalid_argument("l_of_a: a exceeds a(ell)");
    }
    double lo = 0, hi = l_hi;
    for (int it = 0; it < 100 && hi - lo > 1e-13 * (1 + hi); ++it) {
        double mid = 0.5 * (lo + hi);
        (a_of_l(h, mid) < a ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

LocalizeResult localize_screw(const ScrewFunction& g1, const ScrewFunction& g2, double a,
                              double tol) {
    double t_end = 2 * a;
    if (g1.domain_bound < t_end - 1e-12 || g2.domain_bound < t_end - 1e-12)
        throw std::invalid_argument("localize_screw: domain too short for [0, 2a]");
    std::vector<double> pts = linspace(0.0, t_end, 65);
    for (const auto* g : {&g1, &g2})
        for (double t : g->grid)
            if (t >= 0 && t <= t_end) pts.push_back(t);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Complex num = 0;
    double den = 0;
    std::vector<Complex> diffs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        diffs[i] = g1.evaluate(pts[i]) - g2.evaluate(pts[i]);
        num += -Complex(0, 1) * pts[i] * diffs[i];
        den += pts[i] * pts[i];
    }
    Complex beta_c = den > 0 ? num / den : Complex(0, 0);
    double residual = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        residual = std::max(residual, std::abs(diffs[i] - Complex(0, 1) * beta_c * pts[i]));
    LocalizeResult r;
    r.beta_hat = beta_c.real();
    r.beta_hat_imag = beta_c.imag();
    r.residual = residual;
    r.verdict = residual <= tol && std::abs(beta_c.imag()) <= tol;
    return r;
}

namespace {
PsdVerdict hermitian_psd(Eigen::MatrixXcd m, double tol) {
    m = 0.5 * (m + m.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    double norm = std::max(std::abs(lo), std::abs(es.eigenvalues().maxCoeff()));
    return {lo, lo >= -tol * std::max(norm, 1e-300)};
}
}  // namespace

PsdVerdict screw_kernel_psd(const ScrewFunction& g, const std::vector<double>& s_grid) {
    auto n = static_cast<Eigen::Index>(s_grid.size());
    Complex g0 = g.evaluate(0.0);
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            double s = s_grid[static_cast<std::size_t>(i)];
            double t = s_grid[static_cast<std::size_t>(j)];
            m(i, j) = g.evaluate(s - t) - g.evaluate(s) - std::conj(g.evaluate(t)) + g0;
        }
    return hermitian_psd(std::move(m), 1e-8);
}

PsdVerdict bochner_kernel_psd(const ScrewFunction& f, const std::vector<double>& s_grid) {
    auto n = static_cast<Eigen::Index>(s_grid.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = f.evaluate(s_grid[static_cast<std::size_t>(i)] -
                                 s_grid[static_cast<std::size_t>(j)]);
    return hermitian_psd(std::move(m), 1e-8);
}

TraceNormalized trace_normalize(const Hamiltonian& h, std::size_t samples) {
    double x_end = h.ell_infinite ? 8.0 : h.ell * (h.singular_end ? (1.0 - 1e-6) : 1.0);
    std::vector<double> xs = linspace(0.0, x_end, samples + 1);
    std::vector<double> xi(xs.size(), 0.0);
    std::vector<double> e11(xs.size()), e12(xs.size()), e22(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Eigen::Matrix2d m = h.at(i == 0 ? std::min(1e-12, x_end) : xs[i]);
        double tr = m(0, 0) + m(1, 1);
        if (!(tr > 0)) throw std::invalid_argument("trace_normalize: tr H must be positive");
        e11[i] = m(0, 0) / tr;
        e12[i] = m(0, 1) / tr;
        e22[i] = m(1, 1) / tr;
        if (i > 0) {
            auto trace_fn = [&](double x) {
                Eigen::Matrix2d mm = h.at(x);
                return mm(0, 0) + mm(1, 1);
            };
            xi[i] = xi[i - 1] + gl16_uniform(trace_fn, xs[i - 1], xs[i], 1);
        }
    }
    Hamiltonian normed(xi.back(), Potential::grid(xi, e11), Potential::grid(xi, e12),
                       Potential::grid(xi, e22), false, true);
    return {std::move(normed), std::move(xs), std::move(xi)};
}

Hamiltonian potential_to_hamiltonian(const Potential& v11, const Potential& v12,
                                     const Potential& v22, double ell) {
    std::vector<double> edges{0.0};
    for (const auto* p : {&v11, &v12, &v22})
        for (double b : p->breakpoints())
            if (b > 0 && b < ell) edges.push_back(b);
    edges.push_back(ell);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    {
        // H = U U* varies inside panels even for constant V, so the sampled
        // representation always needs a fine grid
        std::vector<double> fine;
        double hmax = ell / 2000.0;
        fine.push_back(0.0);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            auto n = static_cast<std::size_t>(std::ceil((edges[i + 1] - edges[i]) / hmax));
            for (std::size_t j = 1; j <= n; ++j)
                fine.push_back(edges[i] + (edges[i + 1] - edges[i]) *
                                              static_cast<double>(j) / static_cast<double>(n));
        }
        edges = std::move(fine);
    }

    Eigen::Matrix2d u = Eigen::Matrix2d::Identity();
    std::vector<double> g11(edges.size()), g12(edges.size()), g22(edges.size());
    auto record = [&](std::size_t i) {
        Eigen::Matrix2d hm = u * u.transpose();
        g11[i] = hm(0, 0);
        g12[i] = hm(0, 1);
        g22[i] = hm(1, 1);
        if (std::abs(u.determinant() - 1.0) > 1e-9 * (1 + u.squaredNorm()))
            throw NumericalError("potential_to_hamiltonian: U J U* drifted from J",
                                 std::abs(u.determinant() - 1.0));
    };
    record(0);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double hh = edges[p + 1] - edges[p];
        double mid = 0.5 * (edges[p] + edges[p + 1]);
        Eigen::Matrix2d vb;
        double v12m = v12(mid);
        vb << v11(mid), v12m, v12m, v22(mid);
        Eigen::Matrix2d b = generator<Eigen::Matrix2d>(vb);  // V J^{-1}
        auto cs = cs_pair(vb.determinant(), hh);
        u = u * (cs.c * Eigen::Matrix2d::Identity() + cs.s * b);
        record(p + 1);
    }
    return Hamiltonian(ell, Potential::grid(edges, g11), Potential::grid(edges, g12),
                       Potential::grid(edges, g22));
}

double example3_beta(double lambda0) {
    return -std::sin(2 * lambda0) / (std::cosh(2.0) - std::cos(2 * lambda0));
}

}  // namespace spectral
