#pragma once

#include <functional>
#include <vector>

#include "spectral/common.hpp"
#include "spectral/sturm_liouville.hpp"

namespace spectral {

/// Non-real ray z_j = r_j e^{i angle}, angle in (0, pi), r strictly
/// increasing with at least 4 samples.
struct RaySampling {
    double angle;
    std::vector<double> radii;

    RaySampling(double angle, std::vector<double> radii);
    static RaySampling standard(double angle = kPi / 2, double r0 = 1e2, double r1 = 1e6,
                                std::size_t n = 24);
    std::vector<Complex> points() const;
};

/// Least-squares decay estimate of log|m1 - m2| against -Re sqrt(-z):
/// slope c_hat, predicted agreement radius a_hat = c_hat / 2.
struct DecayFit {
    double c_hat = 0;
    double log_C_hat = 0;
    double r2 = 0;
    double a_hat = 0;
    std::size_t used = 0;
    std::size_t clipped = 0;  // points dropped (underflow / cancellation)
    bool indistinguishable = false;
    double a_lower_bound = 0;  // when indistinguishable: bound from the last radius
    // per-used-point diagnostics for CSV emission
    std::vector<double> used_radii, abscissa, log_diff, fitted;
};

/// Fit the ray decay of m1 - m2.  When a compensated difference handle is
/// supplied it is used instead of plain subtraction (which loses all digits
/// once |m1 - m2| < 1e-13 (|m1| + |m2|); such points are dropped).
DecayFit decay_fit(const std::function<Complex(Complex)>& m1,
                   const std::function<Complex(Complex)>& m2, const RaySampling& ray,
                   const std::function<Complex(Complex)>& difference = {});

/// Weyl function with panel propagation renormalized in log-magnitude form;
/// safe for |z| up to 1e8.
std::function<Complex(Complex)> scaled_weyl_handle(SLProblem problem,
                                                   BoundaryCoefficient gamma);

/// Compensated m1(z) - m2(z) for problems sharing ell and gamma: backward
/// Weyl solutions chi_i and the Wronskian identity
/// (chi1' chi2 - chi1 chi2')' = (q1 - q2) chi1 chi2 evaluated only across the
/// region where the potentials differ, all factors carried in scaled form.
std::function<Complex(Complex)> weyl_difference_handle(SLProblem p1, SLProblem p2,
                                                       BoundaryCoefficient gamma);

/// phi(a; z_j) 2 e^{-a sqrt(-z_j)} / (sin alpha + cos alpha / sqrt(-z_j));
/// converges to 1 along the ray.  Scaled propagation, no overflow.
std::vector<Complex> phi_growth_check(const SLProblem& problem, double a,
                                      const RaySampling& ray);

struct GrowthCheck {
    std::vector<double> ratios;  // |m(z_j)| / r_j
    double max_ratio = 0;
    bool bounded = false;  // nonincreasing beyond the first quartile of radii
};

GrowthCheck nevanlinna_growth_check(const std::function<Complex(Complex)>& m,
                                    const RaySampling& ray);

}  // namespace spectral
