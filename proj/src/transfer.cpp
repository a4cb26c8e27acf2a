#include "spectral/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "spectral/quadrature.hpp"

namespace spectral {

namespace {

// Sum_{k >= k_from} (c k + d)^(-r), Euler-Maclaurin midpoint form.
double power_tail_sum(double c, double d, double r, long k_from) {
    if (r <= 1.0) return std::numeric_limits<double>::infinity();
    double base = c * (static_cast<double>(k_from) - 0.5) + d;
    if (base <= 0) return std::numeric_limits<double>::infinity();
    return std::pow(base, 1.0 - r) / (c * (r - 1.0));
}

// int_0^T e^{-y t} (1 - cos(sqrt(l) t))/l dt, closed form; quadrature for
// small |l| where the two closed-form terms cancel.
double laplace_sl_kernel(double lambda, double y, double t_max) {
    if (std::abs(lambda) * std::min(1.0, t_max * t_max) < 1e-6) {
        auto f = [&](double t) {
            return std::exp(-y * t) * kernel_value(Kernel::SlTransfer, lambda, t).real();
        };
        auto n = static_cast<std::size_t>(std::ceil(t_max / std::min(t_max / 16, 0.5 / y)));
        return gl16_uniform(f, 0.0, t_max, n);
    }
    Complex omega = std::sqrt(Complex(lambda, 0.0));
    double e0 = -std::expm1(-y * t_max) / y;
    Complex am = y - Complex(0, 1) * omega, ap = y + Complex(0, 1) * omega;
    Complex ec = 0.5 * ((1.0 - std::exp(-am * t_max)) / am + (1.0 - std::exp(-ap * t_max)) / ap);
    return (e0 - ec.real()) / lambda;
}

}  // namespace

Complex interpolate_samples(const std::vector<double>& grid, const std::vector<Complex>& values,
                            double t) {
    if (grid.empty() || grid.size() != values.size())
        throw std::invalid_argument("interpolate_samples: bad sample arrays");
    if (t < grid.front() - 1e-12 || t > grid.back() + 1e-12)
        throw std::invalid_argument("interpolate_samples: t outside the sampled grid");
    t = std::clamp(t, grid.front(), grid.back());
    if (grid.size() == 1) return values[0];
    if (grid.size() < 4) {  // linear fallback
        auto it = std::upper_bound(grid.begin(), grid.end(), t);
        std::size_t j = std::min(grid.size() - 1,
                                 static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                                     1, it - grid.begin())));
        double u = (t - grid[j - 1]) / (grid[j] - grid[j - 1]);
        return values[j - 1] * (1 - u) + values[j] * u;
    }
    auto it = std::upper_bound(grid.begin(), grid.end(), t);
    std::size_t j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - grid.begin()));
    std::size_t i0 = j >= 2 ? j - 2 : 0;
    i0 = std::min(i0, grid.size() - 4);
    Complex acc = 0;  // 4-point Lagrange
    for (std::size_t i = i0; i < i0 + 4; ++i) {
        double w = 1;
        for (std::size_t k = i0; k < i0 + 4; ++k)
            if (k != i) w *= (t - grid[k]) / (grid[i] - grid[k]);
        acc += w * values[i];
    }
    return acc;
}

Complex TransferFunction::evaluate(double t) const {
    if (provenance) return scale * provenance->integrate_kernel(kernel, t);
    return interpolate_samples(grid, values, t);
}

TransferFunction phi_from_measure(const std::shared_ptr<const SpectralMeasure>& measure,
                                  const std::vector<double>& t_grid, double domain_bound) {
    if (!measure) throw std::invalid_argument("phi_from_measure: null measure");
    if (t_grid.empty() || t_grid.front() != 0)
        throw std::invalid_argument("phi_from_measure: grid must start at t = 0");
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i] < t_grid[i + 1]))
            throw std::invalid_argument("phi_from_measure: grid must be strictly increasing");
    TransferFunction out;
    out.grid = t_grid;
    out.values.resize(t_grid.size());
    out.domain_bound = domain_bound > 0 ? domain_bound : t_grid.back();
    out.provenance = measure;
    out.kernel = Kernel::SlTransfer;
    parallel_for(t_grid.size(), [&](std::size_t i) {
        out.values[i] = measure->integrate_kernel(Kernel::SlTransfer, t_grid[i]);
    });
    return out;
}

TransferFunction transfer_from_samples(std::vector<double> t_grid, std::vector<Complex> values,
                                       double domain_bound, std::string tag) {
    if (t_grid.size() != values.size() || t_grid.empty())
        throw std::invalid_argument("transfer_from_samples: grid/value size mismatch");
    if (t_grid.front() != 0)
        throw std::invalid_argument("transfer_from_samples: grid must start at t = 0");
    TransferFunction out;
    out.grid = std::move(t_grid);
    out.values = std::move(values);
    out.domain_bound = domain_bound;
    out.tag = std::move(tag);
    return out;
}

Eigen::MatrixXd krein_kernel_matrix(const TransferFunction& phi,
                                    const std::vector<double>& s_grid) {
    for (double s : s_grid)
        if (s < 0 || 2 * s > phi.domain_bound + 1e-12)
            throw std::invalid_argument("krein_kernel_matrix: grid exceeds domain_bound/2");
    auto n = static_cast<Eigen::Index>(s_grid.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            double si = s_grid[static_cast<std::size_t>(i)];
            double sj = s_grid[static_cast<std::size_t>(j)];
            double v = phi.evaluate_real(si + sj) - phi.evaluate_real(std::abs(si - sj));
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

PsdVerdict psd_verdict(const Eigen::MatrixXd& matrix, double tol) {
    if (matrix.rows() != matrix.cols())
        throw std::invalid_argument("psd_verdict: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    double norm = std::max(std::abs(es.eigenvalues().minCoeff()),
                           std::abs(es.eigenvalues().maxCoeff()));
    return {lo, lo >= -tol * std::max(norm, 1e-300)};
}

CompareResult compare_transfer(const TransferFunction& phi1, const TransferFunction& phi2,
                               double a, double tol) {
    double t_end = 2 * a;
    if (phi1.domain_bound < t_end - 1e-12 || phi2.domain_bound < t_end - 1e-12)
        throw std::invalid_argument("compare_transfer: domain too short for [0, 2a]");
    std::vector<double> pts{0.0, t_end};
    for (const auto* f : {&phi1, &phi2})
        for (double t : f->grid)
            if (t >= 0 && t <= t_end) pts.push_back(t);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double dev = 0;
    for (double t : pts) dev = std::max(dev, std::abs(phi1.evaluate(t) - phi2.evaluate(t)));
    return {dev, dev <= tol};
}

std::vector<double> laplace_bridge_residual(const TransferFunction& phi,
                                            const std::function<Complex(Complex)>& m,
                                            const std::vector<double>& y_samples, double t_max) {
    if (phi.kernel != Kernel::SlTransfer)
        throw std::invalid_argument("laplace_bridge_residual: needs an SL transfer function");
    std::vector<double> out;
    out.reserve(y_samples.size());
    for (double y : y_samples) {
        if (!(y > 0)) throw std::invalid_argument("laplace_bridge_residual: y must be positive");
        double lhs = 0;
        if (phi.provenance) {
            const auto& mu = *phi.provenance;
            for (const auto& a : mu.atoms()) lhs += a.weight * laplace_sl_kernel(a.location, y, t_max);
            if (mu.density()) {
                const auto& d = *mu.density();
                for (std::size_t i = 0; i < d.grid.size(); ++i)
                    lhs += d.weights[i] * d.values[i] * laplace_sl_kernel(d.grid[i], y, t_max);
            }
            if (mu.tail()) {
                const auto& tl = *mu.tail();
                auto atoms = synthetic_tail_atoms(tl);
                for (const auto& a : atoms) lhs += a.weight * laplace_sl_kernel(a.location, y, t_max);
                // kernel mean 1/lambda beyond the synthetic atoms
                long k_end = tl.k_start + static_cast<long>(atoms.size()) /
                                              (tl.two_sided ? 2 : 1);
                double e0 = -std::expm1(-y * t_max) / y;
                lhs += tl.w * power_tail_sum(tl.c, tl.d, tl.p * (1 + tl.q), k_end) * e0;
                if (tl.two_sided)
                    lhs -= tl.w * power_tail_sum(tl.c, tl.d_neg, tl.p * (1 + tl.q), k_end) * e0;
            }
        } else {
            auto f = [&](double t) { return std::exp(-y * t) * phi.evaluate_real(t); };
            auto n = static_cast<std::size_t>(
                std::ceil(t_max / std::min(t_max / 64, 0.5 / y)));
            lhs = gl16_uniform(f, 0.0, t_max, n);
        }
        Complex rhs = m(Complex(-y * y, 0.0)) / y;
        out.push_back(std::abs(lhs - rhs.real()));
    }
    return out;
}

}  // namespace spectral
