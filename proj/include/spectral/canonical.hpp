#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "spectral/measure.hpp"
#include "spectral/sturm_liouville.hpp"
#include "spectral/transfer.hpp"

namespace spectral {

// Canonical system -J y' = z H y with J = [[0, -1], [1, 0]].  The sign
// convention is fixed by requiring rotation-matrix transfer matrices for
// constant H = I/2.

struct Hamiltonian {
    double ell = 1;
    bool ell_infinite = false;
    bool singular_end = false;  // entries blow up as x -> ell (limit-point end)
    bool trace_normed = false;
    Potential h11, h12, h22;

    Hamiltonian(double ell, Potential h11, Potential h12, Potential h22,
                bool singular_end = false, bool trace_normed = false);

    Eigen::Matrix2d at(double x) const;
};

struct CanonicalPanels {
    std::vector<double> edges;
    std::vector<Eigen::Matrix2d> hbar;
};

/// Piecewise-constant panel approximation of H on [0, x]; geometric
/// refinement toward a singular right end.
CanonicalPanels canonical_panels(const Hamiltonian& h, double x, std::size_t min_panels = 2000,
                                 double panels_per_efold = 120);

/// W(x; z) solving dW/dx J = z W H, W(0) = I.
Eigen::Matrix2cd transfer_matrix_W(const Hamiltonian& h, double x, Complex z);

/// W together with dW/dz (for residue weights).
std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> transfer_matrix_W_dz(const Hamiltonian& h,
                                                                   double x, Complex z);

/// Weyl function (w11 g + w12)/(w21 g + w22) at x = ell (regular end) or its
/// x -> ell limit (singular/infinite end; gamma-independent there).
Complex weyl_function_canonical(const Hamiltonian& h, const BoundaryCoefficient& gamma,
                                Complex z, double tol = 1e-9);

/// Discrete spectral measure from the eigenvalue scan: count atoms on each
/// side of 0, weights -N(l)/D'(l), plus a fitted two-sided tail.
SpectralMeasure canonical_spectral_measure(const Hamiltonian& h,
                                           const BoundaryCoefficient& gamma,
                                           std::size_t count_per_side);

/// Sampled screw function g(t) = i beta t + int (e^{ilt}-1-ilt/(1+l^2)) dtau/l^2
/// or Fourier-Stieltjes f(t) = int e^{ilt} dtau (kernel Exponential).
struct ScrewFunction {
    std::vector<double> grid;
    std::vector<Complex> values;
    double beta = 0;
    Kernel kernel = Kernel::Screw;
    double domain_bound = 0;
    std::shared_ptr<const SpectralMeasure> provenance;

    Complex evaluate(double t) const;
};

ScrewFunction screw_from_measure(const std::shared_ptr<const SpectralMeasure>& measure,
                                 double beta, const std::vector<double>& t_grid,
                                 double domain_bound = 0);

ScrewFunction f_from_measure(const std::shared_ptr<const SpectralMeasure>& measure,
                             const std::vector<double>& t_grid, double domain_bound = 0);

/// a(l) = int_0^l sqrt(det H) dx and its generalized (infimum) inverse.
double a_of_l(const Hamiltonian& h, double l);
double l_of_a(const Hamiltonian& h, double a);

struct LocalizeResult {
    double beta_hat;       // fitted real beta
    double beta_hat_imag;  // imaginary part of the fitted coefficient
    double residual;       // sup |g1 - g2 - i beta_hat t| on [0, 2a]
    bool verdict;
};

/// Fit g1 - g2 against i beta t on [0, 2a]; positive verdict iff the residual
/// is <= tol and the fitted coefficient is real within tol.
LocalizeResult localize_screw(const ScrewFunction& g1, const ScrewFunction& g2, double a,
                              double tol);

/// Kernel G(s,t) = g(s-t) - g(s) - conj(g(t)) + g(0), Hermitian psd test.
PsdVerdict screw_kernel_psd(const ScrewFunction& g, const std::vector<double>& s_grid);

/// Bochner kernel F(s,t) = f(s-t) psd test.
PsdVerdict bochner_kernel_psd(const ScrewFunction& f, const std::vector<double>& s_grid);

struct TraceNormalized {
    Hamiltonian hamiltonian;        // trace-normed, on [0, xi(ell)]
    std::vector<double> x_samples;  // original variable
    std::vector<double> xi_samples; // xi(x) = int_0^x tr H
};

TraceNormalized trace_normalize(const Hamiltonian& h, std::size_t samples = 4000);

/// H = U U* from the potential form dU/dx J = U V, U(0) = I; checks
/// U J U* = J and det H = 1 within 1e-9.
Hamiltonian potential_to_hamiltonian(const Potential& v11, const Potential& v12,
                                     const Potential& v22, double ell);

/// The beta making the Example-3-type screw function equal -|t| on [-2, 2].
double example3_beta(double lambda0);

}  // namespace spectral
