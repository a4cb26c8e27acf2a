#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "spectral/common.hpp"
#include "spectral/measure.hpp"

namespace spectral {

/// Tag for the gamma = infinity boundary coefficient (Dirichlet at x = a).
struct Infinity {};

/// Boundary coefficient at x = a: real constant, infinity, or a Nevanlinna
/// function handle gamma(z).
using BoundaryCoefficient = std::variant<double, Infinity, std::function<Complex(Complex)>>;

/// Potential q on [0, ell]: constant, expression handle, piecewise-linear
/// grid, or piecewise-constant step function.
class Potential {
public:
    static Potential constant(double value);
    static Potential expression(std::function<double(double)> f, std::string text = "",
                                std::vector<double> breakpoints = {});
    /// Piecewise-linear interpolation through (x_i, q_i); x strictly increasing.
    static Potential grid(std::vector<double> x, std::vector<double> q);
    /// Piecewise-constant: values[i] on (edges[i], edges[i+1]).
    static Potential step(std::vector<double> edges, std::vector<double> values);

    enum class Kind { Constant, Handle, Grid, Step };

    double operator()(double x) const;
    bool piecewise_constant() const { return kind_ == Kind::Constant || kind_ == Kind::Step; }
    /// Interior breakpoints where q may be discontinuous or non-smooth.
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::string& text() const { return text_; }
    Kind kind() const { return kind_; }
    double constant_value() const { return value_; }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& node_values() const { return v_; }

private:
    Kind kind_ = Kind::Constant;
    double value_ = 0;
    std::function<double(double)> fn_;
    std::vector<double> x_, v_;
    std::vector<double> breakpoints_;
    std::string text_;
};

struct SLProblem {
    double ell;
    double alpha;  // boundary angle in (0, pi); h = cot(alpha)
    Potential q;

    SLProblem(double ell, double alpha, Potential q);
    double h() const;
};

struct FundamentalValues {
    Complex phi, phi_prime, psi, psi_prime;
    double x = 0;
    Complex z;

    Complex wronskian() const { return phi * psi_prime - phi_prime * psi; }
};

/// Piecewise-constant panel approximation of q on [0, a]; exact for
/// constant/step potentials, midpoint-sampled otherwise.
struct PanelScheme {
    std::vector<double> edges;  // size n+1, edges.front()=0, edges.back()=a
    std::vector<double> qbar;   // size n
};

PanelScheme build_panels(const Potential& q, double a, std::size_t min_panels = 1200);

/// Fundamental solutions phi, psi of -y'' + q y = z y at x, initial data
/// phi(0)=sin(alpha), phi'(0)=cos(alpha), psi(0)=-cos(alpha), psi'(0)=sin(alpha).
FundamentalValues solve_fundamental(const SLProblem& problem, Complex z, double x,
                                    double tol = 1e-11);

/// Weyl-Titchmarsh function m_gamma(z) of the problem restricted to [0, a].
Complex weyl_m(const SLProblem& problem, double a, const BoundaryCoefficient& gamma, Complex z);

/// N smallest eigenvalues of the self-adjoint realization on [0, a] with
/// boundary condition y'(a) = gamma y(a) (gamma real constant or infinity).
std::vector<double> eigenvalues(const SLProblem& problem, double a,
                                const BoundaryCoefficient& gamma, std::size_t count);

/// Orthogonal spectral measure: atoms at the N smallest eigenvalues with
/// weights 1/int_0^a phi(x; lambda_k)^2 dx, plus a fitted analytic tail.
SpectralMeasure orthogonal_measure(const SLProblem& problem, double a,
                                   const BoundaryCoefficient& gamma, std::size_t count);

/// F(y; lambda) = int_0^ell y(x) phi(x; lambda) dx.
double fourier_transform(const SLProblem& problem, const std::function<double(double)>& y,
                         double lambda);

/// Green's function of the realization on [0, a] with condition gamma at a.
Complex greens_function(const SLProblem& problem, double a, const BoundaryCoefficient& gamma,
                        Complex z, double x, double xi);

namespace detail_sl {
/// Prufer angle theta(a; lambda) with theta(0) = alpha; eigenvalue k of the
/// gamma boundary condition solves theta = atan2(1, gamma) + k pi.
double prufer_theta(const PanelScheme& panels, double alpha, double lambda);
/// int_0^a phi(x; lambda)^2 dx by closed-form panel integrals.
double phi_norm_squared(const PanelScheme& panels, double alpha, double lambda);
/// Real fundamental values at the right edge of the panel scheme.
FundamentalValues propagate_panels(const PanelScheme& panels, double alpha, Complex z);
}  // namespace detail_sl

}  // namespace spectral
