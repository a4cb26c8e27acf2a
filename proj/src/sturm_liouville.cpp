#include "spectral/sturm_liouville.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "spectral/ode.hpp"
#include "spectral/oscillator.hpp"
#include "spectral/quadrature.hpp"

namespace spectral {

// ---- Potential -------------------------------------------------------------

Potential Potential::constant(double value) {
    Potential p;
    p.kind_ = Kind::Constant;
    p.value_ = value;
    p.text_ = std::to_string(value);
    return p;
}

Potential Potential::expression(std::function<double(double)> f, std::string text,
                                std::vector<double> breakpoints) {
    Potential p;
    p.kind_ = Kind::Handle;
    p.fn_ = std::move(f);
    p.text_ = std::move(text);
    p.breakpoints_ = std::move(breakpoints);
    return p;
}

Potential Potential::grid(std::vector<double> x, std::vector<double> q) {
    if (x.size() < 2 || x.size() != q.size())
        throw std::invalid_argument("Potential::grid: need matching arrays of length >= 2");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1]))
            throw std::invalid_argument("Potential::grid: abscissae must be strictly increasing");
    for (double v : q)
        if (!std::isfinite(v)) throw std::invalid_argument("Potential::grid: non-finite value");
    Potential p;
    p.kind_ = Kind::Grid;
    p.breakpoints_.assign(x.begin() + 1, x.end() - 1);
    p.x_ = std::move(x);
    p.v_ = std::move(q);
    return p;
}

Potential Potential::step(std::vector<double> edges, std::vector<double> values) {
    if (edges.size() < 2 || edges.size() != values.size() + 1)
        throw std::invalid_argument("Potential::step: need n+1 edges for n values");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1]))
            throw std::invalid_argument("Potential::step: edges must be strictly increasing");
    Potential p;
    p.kind_ = Kind::Step;
    p.breakpoints_.assign(edges.begin() + 1, edges.end() - 1);
    p.x_ = std::move(edges);
    p.v_ = std::move(values);
    return p;
}

double Potential::operator()(double x) const {
    switch (kind_) {
        case Kind::Constant:
            return value_;
        case Kind::Handle:
            return fn_(x);
        case Kind::Grid: {
            if (x <= x_.front()) return v_.front();
            if (x >= x_.back()) return v_.back();
            auto it = std::upper_bound(x_.begin(), x_.end(), x);
            std::size_t j = static_cast<std::size_t>(it - x_.begin());
            double t = (x - x_[j - 1]) / (x_[j] - x_[j - 1]);
            return v_[j - 1] + t * (v_[j] - v_[j - 1]);
        }
        case Kind::Step: {
            if (x <= x_.front()) return v_.front();
            if (x >= x_.back()) return v_.back();
            auto it = std::upper_bound(x_.begin(), x_.end(), x);
            std::size_t j = static_cast<std::size_t>(it - x_.begin());
            return v_[j - 1];
        }
    }
    return 0;
}

SLProblem::SLProblem(double ell_in, double alpha_in, Potential q_in)
    : ell(ell_in), alpha(alpha_in), q(std::move(q_in)) {
    if (!(ell > 0)) throw std::invalid_argument("SLProblem: length must be positive");
    if (!(alpha > 0 && alpha < kPi))
        throw std::invalid_argument("SLProblem: alpha must lie strictly inside (0, pi)");
}

double SLProblem::h() const { return std::cos(alpha) / std::sin(alpha); }

// ---- Panels ----------------------------------------------------------------

PanelScheme build_panels(const Potential& q, double a, std::size_t min_panels) {
    if (!(a > 0)) throw std::invalid_argument("build_panels: need a > 0");
    std::vector<double> coarse{0.0};
    for (double b : q.breakpoints())
        if (b > 0 && b < a) coarse.push_back(b);
    coarse.push_back(a);

    PanelScheme scheme;
    if (q.piecewise_constant()) {
        scheme.edges = coarse;
    } else {
        double hmax = a / static_cast<double>(min_panels);
        scheme.edges.push_back(0.0);
        for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
            double len = coarse[i + 1] - coarse[i];
            auto n = static_cast<std::size_t>(std::ceil(len / hmax));
            for (std::size_t j = 1; j <= n; ++j)
                scheme.edges.push_back(coarse[i] + len * static_cast<double>(j) /
                                                       static_cast<double>(n));
        }
    }
    scheme.qbar.reserve(scheme.edges.size() - 1);
    for (std::size_t p = 0; p + 1 < scheme.edges.size(); ++p)
        scheme.qbar.push_back(q(0.5 * (scheme.edges[p] + scheme.edges[p + 1])));
    return scheme;
}

namespace detail_sl {

FundamentalValues propagate_panels(const PanelScheme& panels, double alpha, Complex z) {
    FundamentalValues f;
    f.z = z;
    f.phi = std::sin(alpha);
    f.phi_prime = std::cos(alpha);
    f.psi = -std::cos(alpha);
    f.psi_prime = std::sin(alpha);
    for (std::size_t p = 0; p + 1 < panels.edges.size(); ++p) {
        double h = panels.edges[p + 1] - panels.edges[p];
        Complex w = z - panels.qbar[p];
        auto cs = cs_pair(w, h);
        auto step = [&](Complex& y, Complex& dy) {
            Complex yn = cs.c * y + cs.s * dy;
            dy = -w * cs.s * y + cs.c * dy;
            y = yn;
        };
        step(f.phi, f.phi_prime);
        step(f.psi, f.psi_prime);
    }
    f.x = panels.edges.back();
    return f;
}

double prufer_theta(const PanelScheme& panels, double alpha, double lambda) {
    double y = std::sin(alpha), dy = std::cos(alpha);
    long zeros = 0;
    for (std::size_t p = 0; p + 1 < panels.edges.size(); ++p) {
        if (p > 0 && y == 0.0) ++zeros;  // zero sitting exactly on a panel edge
        double h = panels.edges[p + 1] - panels.edges[p];
        double w = lambda - panels.qbar[p];
        auto cs = cs_pair(w, h);
        double yn = cs.c * y + cs.s * dy;
        double dyn = -w * cs.s * y + cs.c * dy;
        zeros += count_zeros(w, h, y, dy, yn);
        double scale = std::max(std::abs(yn), std::abs(dyn));
        if (scale > 0) {
            y = yn / scale;
            dy = dyn / scale;
        } else {
            y = yn;
            dy = dyn;
        }
    }
    double sgn = (zeros % 2 == 0) ? 1.0 : -1.0;
    double delta = std::atan2(sgn * y, sgn * dy);
    if (delta <= 0) delta += kPi;
    return static_cast<double>(zeros) * kPi + delta;
}

double phi_norm_squared(const PanelScheme& panels, double alpha, double lambda) {
    double y = std::sin(alpha), dy = std::cos(alpha);
    double total = 0;
    for (std::size_t p = 0; p + 1 < panels.edges.size(); ++p) {
        double h = panels.edges[p + 1] - panels.edges[p];
        double w = lambda - panels.qbar[p];
        auto cs = cs_pair(w, h);
        auto sq = cs_square_integrals(w, h, cs);
        total += y * y * sq.cc + 2 * y * dy * sq.cs + dy * dy * sq.ss;
        double yn = cs.c * y + cs.s * dy;
        dy = -w * cs.s * y + cs.c * dy;
        y = yn;
    }
    return total;
}

}  // namespace detail_sl

// ---- Fundamental solutions -------------------------------------------------

FundamentalValues solve_fundamental(const SLProblem& problem, Complex z, double x, double tol) {
    if (x < 0 || x > problem.ell)
        throw std::invalid_argument("solve_fundamental: x outside [0, ell]");
    FundamentalValues f;
    f.z = z;
    f.x = x;
    f.phi = std::sin(problem.alpha);
    f.phi_prime = std::cos(problem.alpha);
    f.psi = -std::cos(problem.alpha);
    f.psi_prime = std::sin(problem.alpha);
    if (x == 0) return f;

    if (problem.q.piecewise_constant()) {
        auto scheme = build_panels(problem.q, x);
        auto r = detail_sl::propagate_panels(scheme, problem.alpha, z);
        r.x = x;
        f = r;
    } else {
        const auto& q = problem.q;
        auto rhs = [&](double t, const std::array<Complex, 4>& y) {
            Complex c = q(t) - z;
            return std::array<Complex, 4>{y[1], c * y[0], y[3], c * y[2]};
        };
        std::array<Complex, 4> y0{f.phi, f.phi_prime, f.psi, f.psi_prime};
        // integrate piecewise between breakpoints so kinks never sit inside a step
        std::vector<double> stops{0.0};
        for (double b : q.breakpoints())
            if (b > 0 && b < x) stops.push_back(b);
        stops.push_back(x);
        for (std::size_t i = 0; i + 1 < stops.size(); ++i)
            y0 = rk45_integrate(rhs, y0, stops[i], stops[i + 1], tol, tol * 1e-2);
        f.phi = y0[0];
        f.phi_prime = y0[1];
        f.psi = y0[2];
        f.psi_prime = y0[3];
    }
    Complex w = f.wronskian();
    double scale = std::abs(f.phi) * std::abs(f.psi_prime) +
                   std::abs(f.phi_prime) * std::abs(f.psi) + 1.0;
    if (std::abs(w - 1.0) > 1e-9 * scale)
        throw NumericalError("solve_fundamental: Wronskian drifted from 1",
                             std::abs(w - 1.0) / scale);
    return f;
}

// ---- Weyl-Titchmarsh function ----------------------------------------------

Complex weyl_m(const SLProblem& problem, double a, const BoundaryCoefficient& gamma, Complex z) {
    if (!(a > 0 && a <= problem.ell))
        throw std::invalid_argument("weyl_m: need a in (0, ell]");
    FundamentalValues f = solve_fundamental(problem, z, a);
    if (std::holds_alternative<Infinity>(gamma)) {
        double scale = std::abs(f.psi) + std::abs(f.phi);
        if (std::abs(f.phi) < 1e-12 * scale)
            throw NumericalError("weyl_m: degenerate denominator (phi(a; z) ~ 0)",
                                 std::abs(f.phi));
        return f.psi / f.phi;
    }
    Complex g;
    if (std::holds_alternative<double>(gamma))
        g = std::get<double>(gamma);
    else
        g = std::get<std::function<Complex(Complex)>>(gamma)(z);
    Complex den = f.phi_prime - f.phi * g;
    double scale = std::abs(f.phi_prime) + std::abs(f.phi * g) + 1e-300;
    if (std::abs(den) < 1e-12 * scale)
        throw NumericalError("weyl_m: degenerate denominator at z", std::abs(den) / scale);
    return (f.psi_prime - f.psi * g) / den;
}

// ---- Eigenvalues -----------------------------------------------------------

std::vector<double> eigenvalues(const SLProblem& problem, double a,
                                const BoundaryCoefficient& gamma, std::size_t count) {
    if (!(a > 0 && a <= problem.ell))
        throw std::invalid_argument("eigenvalues: need a in (0, ell]");
    if (std::holds_alternative<std::function<Complex(Complex)>>(gamma))
        throw std::invalid_argument("eigenvalues: gamma must be a real constant or infinity");
    if (count == 0) return {};

    auto scheme = build_panels(problem.q, a);
    double delta_bc = std::holds_alternative<Infinity>(gamma)
                          ? kPi
                          : std::atan2(1.0, std::get<double>(gamma));
    auto theta = [&](double lam) {
        return detail_sl::prufer_theta(scheme, problem.alpha, lam);
    };

    double qmin = *std::min_element(scheme.qbar.begin(), scheme.qbar.end());
    double qmax = *std::max_element(scheme.qbar.begin(), scheme.qbar.end());
    double lo = qmin - 1;
    {
        double gap = 1;
        int guard = 0;
        while (theta(lo) >= delta_bc) {
            lo -= gap;
            gap *= 2;
            if (++guard > 200)
                throw NumericalError("eigenvalues: could not bracket below the spectrum");
        }
    }

    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        double target = delta_bc + static_cast<double>(k) * kPi;
        // asymptotic first guess sqrt(lambda) ~ theta / a
        double hi = std::max(lo + 1.0, (target / a) * (target / a) + qmax + 10.0);
        double incr = std::max(1.0, hi - lo);
        int guard = 0;
        while (theta(hi) <= target) {
            hi += incr;
            incr *= 2;
            if (++guard > 200) throw NumericalError("eigenvalues: bracket expansion failed");
        }
        double blo = lo, bhi = hi;
        for (int it = 0; it < 200 && bhi - blo > 1e-13 * (1 + std::abs(blo) + std::abs(bhi));
             ++it) {
            double mid = 0.5 * (blo + bhi);
            (theta(mid) < target ? blo : bhi) = mid;
        }
        double lam = 0.5 * (blo + bhi);
        if (!out.empty() && !(lam > out.back()))
            throw NumericalError("eigenvalues: non-increasing sequence (missed bracket)");
        out.push_back(lam);
        lo = lam;  // theta(lam) = target < next target
    }
    return out;
}

// ---- Orthogonal spectral measure -------------------------------------------

SpectralMeasure orthogonal_measure(const SLProblem& problem, double a,
                                   const BoundaryCoefficient& gamma, std::size_t count) {
    auto lams = eigenvalues(problem, a, gamma, count);
    auto scheme = build_panels(problem.q, a);
    std::vector<Atom> atoms(lams.size());
    std::vector<double> norms(lams.size());
    parallel_for(lams.size(), [&](std::size_t i) {
        norms[i] = detail_sl::phi_norm_squared(scheme, problem.alpha, lams[i]);
    });
    for (std::size_t i = 0; i < lams.size(); ++i) {
        if (!(norms[i] > 0) || !std::isfinite(norms[i]))
            throw NumericalError("orthogonal_measure: non-finite eigenfunction norm");
        atoms[i] = {lams[i], 1.0 / norms[i]};
    }

    std::optional<TailDescriptor> tail;
    std::size_t n = lams.size();
    if (n >= 8 && lams[n - 6] > 0) {
        // sqrt(lambda_k) ~ c k + d from the last few computed eigenvalues
        double r1 = std::sqrt(lams[n - 6]), r2 = std::sqrt(lams[n - 1]);
        TailDescriptor t;
        t.c = (r2 - r1) / 5.0;
        t.d = r2 - t.c * static_cast<double>(n - 1);
        t.p = 2;
        t.q = 0;
        double wsum = 0;
        for (std::size_t i = n - 5; i < n; ++i) wsum += atoms[i].weight;
        t.w = wsum / 5.0;
        t.k_start = static_cast<long>(n);
        if (t.c > 0 &&
            std::pow(t.c * static_cast<double>(t.k_start) + t.d, t.p) > lams.back())
            tail = t;
    }
    return SpectralMeasure(std::move(atoms), {}, tail);
}

// ---- Transform and Green's function ----------------------------------------

double fourier_transform(const SLProblem& problem, const std::function<double(double)>& y,
                         double lambda) {
    auto scheme = build_panels(problem.q, problem.ell);
    // quadrature panels must resolve the oscillation scale of phi and of y
    double omega = std::sqrt(std::max(std::abs(lambda), 1.0));
    double hmax = std::min(6.0 / omega, problem.ell / 64.0);
    double phi = std::sin(problem.alpha), dphi = std::cos(problem.alpha);
    double total = 0;
    for (std::size_t p = 0; p + 1 < scheme.edges.size(); ++p) {
        double x0 = scheme.edges[p], x1 = scheme.edges[p + 1];
        double w = lambda - scheme.qbar[p];
        auto nsub = static_cast<std::size_t>(std::ceil((x1 - x0) / hmax));
        for (std::size_t s = 0; s < nsub; ++s) {
            double a0 = x0 + (x1 - x0) * static_cast<double>(s) / static_cast<double>(nsub);
            double a1 = x0 + (x1 - x0) * static_cast<double>(s + 1) / static_cast<double>(nsub);
            double mid = 0.5 * (a0 + a1), half = 0.5 * (a1 - a0);
            for (int i = 0; i < 8; ++i) {
                for (double sgn : {-1.0, 1.0}) {
                    double x = mid + sgn * half * GaussLegendre16::x[static_cast<std::size_t>(i)];
                    auto cs = cs_pair(w, x - x0);
                    double phix = cs.c * phi + cs.s * dphi;
                    total += half * GaussLegendre16::w[static_cast<std::size_t>(i)] * y(x) * phix;
                }
            }
        }
        auto cs = cs_pair(w, x1 - x0);
        double phin = cs.c * phi + cs.s * dphi;
        dphi = -w * cs.s * phi + cs.c * dphi;
        phi = phin;
    }
    return total;
}

Complex greens_function(const SLProblem& problem, double a, const BoundaryCoefficient& gamma,
                        Complex z, double x, double xi) {
    if (x < 0 || x > a || xi < 0 || xi > a)
        throw std::invalid_argument("greens_function: arguments outside [0, a]");
    double lo = std::min(x, xi), hi = std::max(x, xi);
    Complex m = weyl_m(problem, a, gamma, z);
    FundamentalValues fl = solve_fundamental(problem, z, lo);
    FundamentalValues fu = solve_fundamental(problem, z, hi);
    return fl.phi * (m * fu.phi - fu.psi);
}

}  // namespace spectral
