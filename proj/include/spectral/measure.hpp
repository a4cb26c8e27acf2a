#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "spectral/common.hpp"

namespace spectral {

/// Entire-in-lambda kernels integrated against spectral measures.
enum class Kernel {
    SlTransfer,      // (1 - cos(sqrt(l) t)) / l
    Screw,           // (exp(i l t) - 1 - i l t/(1+l^2)) / l^2
    CosineTransfer,  // cos(sqrt(l) t)
    Exponential      // exp(i l t)
};

Complex kernel_value(Kernel k, double lambda, double t);

struct Atom {
    double location;
    double weight;
};

/// Sampled absolutely continuous component: quadrature nodes, density values
/// at the nodes, and the matching quadrature weights.
struct DensityComponent {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> weights;
    std::string rule = "gauss-legendre";
};

/// Analytic description of atoms beyond the last stored one:
///   lambda_k = (c k + d)^p,  tau_k = w |lambda_k|^(-q),  k > 0,
/// starting at index k_start.  For two-sided (canonical) spectra the mirror
/// branch is lambda_{-k} = -(c k + d_neg)^p with the same weight law.
struct TailDescriptor {
    double c = 0;
    double d = 0;
    int p = 2;
    double w = 0;
    double q = 0;
    long k_start = 1;
    bool two_sided = false;
    double d_neg = 0;
};

/// Materialized synthetic atoms of a tail descriptor (count per side).
std::vector<Atom> synthetic_tail_atoms(const TailDescriptor& tail, long count = 20000);

/// Build density samples for a callable density on log-spaced Gauss-Legendre
/// panels covering [lo, hi] (lo > 0), panels_per_decade panels per decade.
DensityComponent sample_density_log(const std::function<double(double)>& density, double lo,
                                    double hi, int panels_per_decade);

class SpectralMeasure {
public:
    explicit SpectralMeasure(std::vector<Atom> atoms,
                             std::optional<DensityComponent> density = {},
                             std::optional<TailDescriptor> tail = {});

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<DensityComponent>& density() const { return density_; }
    const std::optional<TailDescriptor>& tail() const { return tail_; }

    /// int d tau / (1 + lambda^2) over the stored (non-tail) part.
    double nevanlinna_moment() const;

    /// Mass of the open interval (l1, l2) carried by the stored part.
    double mass(double l1, double l2) const;

    double total_stored_mass() const;
    bool supported_nonneg() const;
    double min_support() const;

    /// Stieltjes transform sum tau_k/(lambda_k - z) + density + tail.
    /// z must be non-real, or real and strictly outside the support.
    Complex stieltjes(Complex z) const;

    /// Integral of an entire kernel against the measure, tail-compensated.
    /// Throws NumericalError if the truncation-error estimate exceeds tol.
    Complex integrate_kernel(Kernel k, double t, double tol = 0.0,
                             double* error_estimate = nullptr) const;

private:
    std::vector<Atom> atoms_;
    std::optional<DensityComponent> density_;
    std::optional<TailDescriptor> tail_;
};

struct NevanlinnaData {
    double alpha = 0;
    double beta = 0;  // >= 0
    SpectralMeasure measure;

    /// F(z) = alpha + beta z + int (1/(l-z) - l/(1+l^2)) d tau(l).
    Complex evaluate(Complex z) const;
};

Complex stieltjes_transform(const SpectralMeasure& measure, Complex z);

struct InversionResult {
    double mass;
    double error_estimate;
};

/// Stieltjes-Perron inversion: (1/pi) int_{l1}^{l2} Im m(l + i eps) dl,
/// Richardson-extrapolated over the epsilon sequence.  Throws NumericalError
/// when the extrapolation does not settle.
InversionResult stieltjes_invert(const std::function<Complex(Complex)>& m, double l1, double l2,
                                 std::vector<double> eps_sequence = {1e-1, 1e-2, 1e-3});

Complex integrate_entire_kernel(const SpectralMeasure& measure, Kernel k, double t);

}  // namespace spectral
