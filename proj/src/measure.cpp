#include "spectral/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectral/quadrature.hpp"

namespace spectral {

namespace {

constexpr long kSyntheticTailAtoms = 20000;

// Sum_{k >= k_from} (c k + d)^(-r), Euler-Maclaurin midpoint form.
double power_tail_sum(double c, double d, double r, long k_from) {
    if (r <= 1.0) return std::numeric_limits<double>::infinity();
    double base = c * (static_cast<double>(k_from) - 0.5) + d;
    if (base <= 0) return std::numeric_limits<double>::infinity();
    return std::pow(base, 1.0 - r) / (c * (r - 1.0));
}

}  // namespace

Complex kernel_value(Kernel k, double lambda, double t) {
    switch (k) {
        case Kernel::SlTransfer: {
            double u = lambda * t * t;
            if (std::abs(u) < 1e-2) {
                // (1 - cos(x))/lambda with x^2 = u; 6 terms keep rel err < 1e-14
                double s = 1.0 / 2 - u / 24 + u * u / 720 - u * u * u / 40320 +
                           u * u * u * u / 3628800 - u * u * u * u * u / 479001600;
                return t * t * s;
            }
            if (lambda > 0) return (1.0 - std::cos(std::sqrt(lambda) * t)) / lambda;
            return (1.0 - std::cosh(std::sqrt(-lambda) * t)) / lambda;
        }
        case Kernel::CosineTransfer: {
            if (lambda >= 0) return std::cos(std::sqrt(lambda) * t);
            return std::cosh(std::sqrt(-lambda) * t);
        }
        case Kernel::Screw: {
            double x = lambda * t;
            if (std::abs(x) < 1e-2) {
                // (e^{ix} - 1 - ix)/x^2 * t^2 + i lambda t/(1+lambda^2)
                Complex ser(-0.5 + x * x / 24 - x * x * x * x / 720,
                            -x / 6 + x * x * x / 120 - x * x * x * x * x / 5040);
                return t * t * ser + Complex(0, lambda * t / (1 + lambda * lambda));
            }
            Complex e = std::exp(Complex(0, x));
            return (e - 1.0 - Complex(0, x / (1 + lambda * lambda))) / (lambda * lambda);
        }
        case Kernel::Exponential:
            return std::exp(Complex(0, lambda * t));
    }
    return {};
}

std::vector<Atom> synthetic_tail_atoms(const TailDescriptor& tail, long count) {
    std::vector<Atom> out;
    out.reserve(static_cast<std::size_t>(count) * (tail.two_sided ? 2 : 1));
    auto side = [&](double dd, double sign) {
        for (long k = tail.k_start; k < tail.k_start + count; ++k) {
            double lam = sign * std::pow(tail.c * static_cast<double>(k) + dd, tail.p);
            double tau = tail.w * std::pow(std::abs(lam), -tail.q);
            out.push_back({lam, tau});
        }
    };
    side(tail.d, +1.0);
    if (tail.two_sided) side(tail.d_neg, -1.0);
    return out;
}

DensityComponent sample_density_log(const std::function<double(double)>& density, double lo,
                                    double hi, int panels_per_decade) {
    if (!(lo > 0) || !(hi > lo)) throw std::invalid_argument("sample_density_log: need 0 < lo < hi");
    DensityComponent out;
    double decades = std::log10(hi / lo);
    auto n_panels = static_cast<std::size_t>(std::ceil(decades * panels_per_decade));
    auto edges = logspace(lo, hi, n_panels + 1);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p)
        gl16_panel(edges[p], edges[p + 1], out.grid, out.weights);
    out.values.reserve(out.grid.size());
    for (double x : out.grid) out.values.push_back(density(x));
    return out;
}

SpectralMeasure::SpectralMeasure(std::vector<Atom> atoms, std::optional<DensityComponent> density,
                                 std::optional<TailDescriptor> tail)
    : atoms_(std::move(atoms)), density_(std::move(density)), tail_(std::move(tail)) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!(atoms_[i].weight > 0))
            throw std::invalid_argument("SpectralMeasure: atom weights must be positive");
        if (i > 0 && !(atoms_[i].location > atoms_[i - 1].location))
            throw std::invalid_argument("SpectralMeasure: atom locations must be strictly increasing");
        if (!std::isfinite(atoms_[i].location) || !std::isfinite(atoms_[i].weight))
            throw std::invalid_argument("SpectralMeasure: non-finite atom");
    }
    if (density_) {
        const auto& d = *density_;
        if (d.grid.size() != d.values.size() || d.grid.size() != d.weights.size())
            throw std::invalid_argument("SpectralMeasure: density arrays must have equal length");
        for (double v : d.values)
            if (!(v >= 0)) throw std::invalid_argument("SpectralMeasure: density values must be >= 0");
    }
    if (!std::isfinite(nevanlinna_moment()))
        throw std::invalid_argument("SpectralMeasure: int d tau/(1+l^2) is not finite");
}

double SpectralMeasure::nevanlinna_moment() const {
    double s = 0;
    for (const auto& a : atoms_) s += a.weight / (1 + a.location * a.location);
    if (density_)
        for (std::size_t i = 0; i < density_->grid.size(); ++i)
            s += density_->weights[i] * density_->values[i] /
                 (1 + density_->grid[i] * density_->grid[i]);
    return s;
}

double SpectralMeasure::mass(double l1, double l2) const {
    double s = 0;
    for (const auto& a : atoms_)
        if (a.location > l1 && a.location < l2) s += a.weight;
    if (density_)
        for (std::size_t i = 0; i < density_->grid.size(); ++i)
            if (density_->grid[i] > l1 && density_->grid[i] < l2)
                s += density_->weights[i] * density_->values[i];
    return s;
}

double SpectralMeasure::total_stored_mass() const {
    return mass(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
}

bool SpectralMeasure::supported_nonneg() const { return min_support() >= 0; }

double SpectralMeasure::min_support() const {
    double lo = std::numeric_limits<double>::infinity();
    if (!atoms_.empty()) lo = std::min(lo, atoms_.front().location);
    if (density_ && !density_->grid.empty()) lo = std::min(lo, density_->grid.front());
    return lo;
}

Complex SpectralMeasure::stieltjes(Complex z) const {
    if (z.imag() == 0) {
        // real evaluation is allowed strictly outside the support
        double x = z.real();
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& a : atoms_) dist = std::min(dist, std::abs(a.location - x));
        if (density_ && !density_->grid.empty() && x >= density_->grid.front() &&
            x <= density_->grid.back())
            dist = 0;
        if (tail_ && x >= std::pow(tail_->c * static_cast<double>(tail_->k_start) + tail_->d,
                                   tail_->p) - 1.0)
            dist = 0;
        if (!(dist > 1e-9 * (1 + std::abs(x))))
            throw std::invalid_argument("stieltjes: z must be non-real or off the support");
    }
    Complex s = 0;
    for (const auto& a : atoms_) s += a.weight / (a.location - z);
    if (density_)
        for (std::size_t i = 0; i < density_->grid.size(); ++i)
            s += density_->weights[i] * density_->values[i] / (density_->grid[i] - z);
    if (tail_) {
        const auto& tl = *tail_;
        auto side = [&](double dd, double sign) {
            Complex acc = 0;
            long k = tl.k_start;
            for (; k < tl.k_start + kSyntheticTailAtoms; ++k) {
                double lam = sign * std::pow(tl.c * static_cast<double>(k) + dd, tl.p);
                double tau = tl.w * std::pow(std::abs(lam), -tl.q);
                acc += tau / (lam - z);
            }
            // remainder: 1/(l-z) ~ sign/|l| + z/l^2, |l| = (ck+d)^p
            double m1 = power_tail_sum(tl.c, dd, tl.p * (1 + tl.q), k);
            double m2 = power_tail_sum(tl.c, dd, tl.p * (2 + tl.q), k);
            acc += tl.w * (sign * m1 + z * m2);
            return acc;
        };
        s += side(tl.d, +1.0);
        if (tl.two_sided) s += side(tl.d_neg, -1.0);
    }
    return s;
}

Complex SpectralMeasure::integrate_kernel(Kernel k, double t, double tol,
                                          double* error_estimate) const {
    Complex s = 0;
    for (const auto& a : atoms_) s += a.weight * kernel_value(k, a.location, t);
    if (density_)
        for (std::size_t i = 0; i < density_->grid.size(); ++i)
            s += density_->weights[i] * density_->values[i] *
                 kernel_value(k, density_->grid[i], t);
    double err = 0;
    if (tail_) {
        const auto& tl = *tail_;
        auto side = [&](double dd, double sign) {
            Complex acc = 0;
            long kk = tl.k_start;
            for (; kk < tl.k_start + kSyntheticTailAtoms; ++kk) {
                double lam = sign * std::pow(tl.c * static_cast<double>(kk) + dd, tl.p);
                double tau = tl.w * std::pow(std::abs(lam), -tl.q);
                acc += tau * kernel_value(k, lam, t);
            }
            // non-oscillatory remainder of the kernel mean beyond the
            // synthetic atoms; the oscillatory leftover enters err.
            switch (k) {
                case Kernel::SlTransfer:
                    acc += tl.w * sign * power_tail_sum(tl.c, dd, tl.p * (1 + tl.q), kk);
                    err += tl.w * power_tail_sum(tl.c, dd, tl.p * (1 + tl.q), kk);
                    break;
                case Kernel::CosineTransfer:
                    err += tl.w * power_tail_sum(tl.c, dd, tl.p * tl.q, kk);
                    break;
                case Kernel::Screw:
                    acc -= tl.w * power_tail_sum(tl.c, dd, tl.p * (2 + tl.q), kk);
                    acc += Complex(0, -sign * t) * tl.w *
                           power_tail_sum(tl.c, dd, tl.p * (3 + tl.q), kk);
                    err += tl.w * power_tail_sum(tl.c, dd, tl.p * (2 + tl.q), kk);
                    break;
                case Kernel::Exponential:
                    err += tl.w * power_tail_sum(tl.c, dd, tl.p * tl.q, kk);
                    break;
            }
            return acc;
        };
        s += side(tl.d, +1.0);
        if (tl.two_sided) s += side(tl.d_neg, -1.0);
    }
    if (error_estimate) *error_estimate = err;
    if (tol > 0 && err > tol)
        throw NumericalError("integrate_kernel: truncation-error estimate exceeds tolerance", err);
    return s;
}

Complex NevanlinnaData::evaluate(Complex z) const {
    Complex s = alpha + beta * z;
    for (const auto& a : measure.atoms())
        s += a.weight * (1.0 / (a.location - z) - a.location / (1 + a.location * a.location));
    if (measure.density()) {
        const auto& d = *measure.density();
        for (std::size_t i = 0; i < d.grid.size(); ++i)
            s += d.weights[i] * d.values[i] *
                 (1.0 / (d.grid[i] - z) - d.grid[i] / (1 + d.grid[i] * d.grid[i]));
    }
    return s;
}

Complex stieltjes_transform(const SpectralMeasure& measure, Complex z) {
    return measure.stieltjes(z);
}

InversionResult stieltjes_invert(const std::function<Complex(Complex)>& m, double l1, double l2,
                                 std::vector<double> eps_sequence) {
    if (!(l1 < l2)) throw std::invalid_argument("stieltjes_invert: need l1 < l2");
    if (eps_sequence.size() < 2)
        throw std::invalid_argument("stieltjes_invert: need at least two epsilons");
    std::sort(eps_sequence.begin(), eps_sequence.end(), std::greater<>());

    std::vector<double> vals;
    for (double eps : eps_sequence) {
        auto integrand = [&](double lam) { return m(Complex(lam, eps)).imag(); };
        // pre-split so narrow Lorentzian peaks cannot slip through
        double width = std::max(4 * eps, (l2 - l1) / 512);
        auto n = static_cast<std::size_t>(std::ceil((l2 - l1) / width));
        auto edges = linspace(l1, l2, n + 1);
        double integral = 0;
        for (std::size_t p = 0; p + 1 < edges.size(); ++p)
            integral += adaptive_simpson(integrand, edges[p], edges[p + 1], 1e-10);
        vals.push_back(integral / kPi);
    }

    // Neville extrapolation to eps -> 0 (Im m is polynomial in eps to
    // leading orders away from the interval endpoints)
    std::size_t n = vals.size();
    std::vector<std::vector<double>> tab(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) tab[i][0] = vals[i];
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = j; i < n; ++i) {
            double e_hi = eps_sequence[i - j], e_lo = eps_sequence[i];
            tab[i][j] = (e_hi * tab[i][j - 1] - e_lo * tab[i - 1][j - 1]) / (e_hi - e_lo);
        }
    double value = tab[n - 1][n - 1];
    double err = std::abs(value - tab[n - 1][n - 2]);
    double scale = std::max(std::abs(value), std::abs(vals.front()));
    if (err > 0.05 * scale + 1e-6)
        throw NumericalError("stieltjes_invert: epsilon extrapolation did not converge", err);
    return {value, err};
}

Complex integrate_entire_kernel(const SpectralMeasure& measure, Kernel k, double t) {
    return measure.integrate_kernel(k, t);
}

}  // namespace spectral
