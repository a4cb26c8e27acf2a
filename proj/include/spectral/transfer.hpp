#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "spectral/measure.hpp"

namespace spectral {

/// Sampled transfer function Phi(t) = int (1 - cos(sqrt(l) t))/l d tau(l)
/// (or a screw-type complex variant), with its provenance measure.
struct TransferFunction {
    std::vector<double> grid;     // strictly increasing, grid[0] == 0
    std::vector<Complex> values;  // real case carries zero imaginary parts
    double domain_bound = 0;      // largest certified t
    std::shared_ptr<const SpectralMeasure> provenance;  // may be empty (closed form)
    Kernel kernel = Kernel::SlTransfer;
    double scale = 1.0;  // applied on evaluation (g = -Phi for strings)
    double certified_tol = 1e-10;
    std::string tag;  // closed-form label when provenance is empty

    /// Re-evaluate from provenance when available, else interpolate the grid.
    Complex evaluate(double t) const;
    double evaluate_real(double t) const { return evaluate(t).real(); }
};

/// 4-point Lagrange interpolation of sampled values on a strictly increasing
/// grid (linear for fewer than 4 samples).
Complex interpolate_samples(const std::vector<double>& grid, const std::vector<Complex>& values,
                            double t);

/// Build Phi_tau on t_grid; domain_bound defaults to the grid end.
TransferFunction phi_from_measure(const std::shared_ptr<const SpectralMeasure>& measure,
                                  const std::vector<double>& t_grid, double domain_bound = 0);

/// Closed-form transfer function from samples only (no provenance).
TransferFunction transfer_from_samples(std::vector<double> t_grid, std::vector<Complex> values,
                                       double domain_bound, std::string tag = "samples");

/// K(s_i, s_j) = Phi(s_i + s_j) - Phi(|s_i - s_j|); s_grid in [0, bound/2].
Eigen::MatrixXd krein_kernel_matrix(const TransferFunction& phi,
                                    const std::vector<double>& s_grid);

struct PsdVerdict {
    double min_eigenvalue;
    bool is_psd;
};

/// Smallest eigenvalue of a symmetric matrix; psd up to -tol * spectral norm.
PsdVerdict psd_verdict(const Eigen::MatrixXd& matrix, double tol = 1e-8);

struct CompareResult {
    double max_abs_deviation;
    bool locally_identical;
};

/// Sup-norm of phi1 - phi2 over the union grid restricted to [0, 2a].
CompareResult compare_transfer(const TransferFunction& phi1, const TransferFunction& phi2,
                               double a, double tol);

/// |int_0^Tmax e^{-y t} Phi(t) dt - m(-y^2)/y| for each y in y_samples.
std::vector<double> laplace_bridge_residual(const TransferFunction& phi,
                                            const std::function<Complex(Complex)>& m,
                                            const std::vector<double>& y_samples, double t_max);

}  // namespace spectral
