#pragma once

#include <Eigen/Dense>
#include <functional>

#include "spectral/canonical.hpp"
#include "spectral/sturm_liouville.hpp"
#include "spectral/transfer.hpp"

namespace spectral::examples {

// Example 1: q = 0 on [0, 1], alpha = pi/2 (Neumann condition at 0).
SLProblem example1();
// Closed-form Weyl function m_gamma(z) of Example 1.
Complex example1_m(const BoundaryCoefficient& gamma, Complex z);
// Closed-form transfer functions: Phi(t) = t on [0, 2] for every gamma;
// beyond, the gamma = 0 and gamma = infinity branches diverge.
double example1_phi0_closed(double t);
double example1_phiinf_closed(double t);

// Example 2: Bessel-type q(x) = 2/(x-1)^2, alpha = pi/2, singular and limit
// point at x = 1; solvers only ever run on [0, ell] with ell < 1.
SLProblem example2(double ell = 0.5);
Complex example2_phi(double x, Complex z);
Complex example2_phi_prime(double x, Complex z);
Complex example2_psi(double x, Complex z);
Complex example2_psi_prime(double x, Complex z);
// m_s(z) = (sqrt z - tan sqrt z)/((1 - z) tan sqrt z - sqrt z).
Complex example2_ms(Complex z);
// gamma(z) = chi'(1/2)/chi(1/2) with chi = m_s phi - psi: the boundary
// parameter carrying the singular tail [1/2, 1).
std::function<Complex(Complex)> example2_gamma_tail();
// Atoms at the poles of m_s with residue weights, plus a fitted tail.
SpectralMeasure example2_singular_measure(std::size_t count);

// Example 3: H = I/2 on [0, 2]; g_inf(t) = [t^2/2 - |t|]_[-2,2] - t^2/2
// (periodic continuation of the bracket).
Hamiltonian example3();
double example3_ginf_closed(double t);

// Example 4: H = diag((x-1)^2, (x-1)^{-2}) on [0, 1), singular at 1;
// g(t) = [t^2/2 - t]_(0,2] continued 2-periodically.
Hamiltonian example4();
Eigen::Matrix2cd example4_W(double x, Complex z);
double example4_g_closed(double t);

// Example 5: H = diag(0, 1) on [0, 1), diag((x-2)^2, (x-2)^{-2}) on [1, 2);
// f(t) = [1 - |t|]_[-2,2] continued 4-periodically.
Hamiltonian example5();
double example5_f_closed(double t);

}  // namespace spectral::examples
