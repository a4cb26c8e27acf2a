#pragma once

#include <memory>
#include <vector>

#include "spectral/measure.hpp"
#include "spectral/sturm_liouville.hpp"
#include "spectral/transfer.hpp"

namespace spectral {

/// Point mass of a string: jump of M at position x.
struct StringAtom {
    double x;
    double jump;
};

/// Regular string S[ell, M]: mass distribution M = absolutely continuous
/// density + point masses, with M nondecreasing and ell + M(ell) finite.
class MassDistribution {
public:
    MassDistribution(double ell, Potential density, std::vector<StringAtom> atoms = {});
    static MassDistribution homogeneous(double ell, double density = 1.0);
    static MassDistribution atoms_only(double ell, std::vector<StringAtom> atoms);

    double ell() const { return ell_; }
    const Potential& density() const { return density_; }
    const std::vector<StringAtom>& atoms() const { return atoms_; }

    /// M(x) = int_0^x density + sum of jumps at positions <= x.
    double mass(double x) const;
    double total_mass() const { return mass(ell_); }

    /// int_0^x sqrt(M'(s)) ds over the absolutely continuous component.
    double travel_time(double x) const;
    bool purely_atomic() const { return purely_atomic_; }

private:
    double ell_;
    Potential density_;
    std::vector<StringAtom> atoms_;
    bool purely_atomic_ = false;
};

/// Fundamental solutions of the string equation dy' + z y dM = 0 at x, with
/// phi(0) = 1, phi'(0-) = 0, psi(0) = 0, psi'(0-) = 1; derivatives are left
/// derivatives (a point mass at x itself is not applied).
FundamentalValues string_fundamental(const MassDistribution& s, Complex z, double x,
                                     double tol = 1e-9);

/// String Weyl function (psi'(ell) gamma + psi(ell)) / (phi'(ell) gamma +
/// phi(ell)); gamma a Stieltjes constant >= 0, infinity, or a handle gamma(z).
Complex string_weyl(const MassDistribution& s, const BoundaryCoefficient& gamma, Complex z);

/// Spectral measure of the string with constant gamma: atoms at the roots of
/// phi' gamma + phi on [0, inf) (phi' for gamma = infinity) with residue
/// weights, plus a fitted analytic tail when the string carries density.
SpectralMeasure string_spectral_measure(const MassDistribution& s,
                                        const BoundaryCoefficient& gamma, std::size_t count);

/// String transfer function on t_grid from a measure on [0, inf):
/// g(t) = int (cos(sqrt(l) t) - 1)/l d tau (default), or the cosine variant
/// f(t) = int cos(sqrt(l) t) d tau (requires finite total mass).
TransferFunction string_transfer(const std::shared_ptr<const SpectralMeasure>& measure,
                                 const std::vector<double>& t_grid, bool cosine_variant = false,
                                 double domain_bound = 0);

/// l(a) = inf { l : int_0^l sqrt(M'(x)) dx = a }; refuses purely atomic
/// strings (no absolutely continuous component).
double string_l_of_a(const MassDistribution& s, double a);

/// Sup-deviation of g1 - g2 on [0, 2a] with verdict.
CompareResult localize_string(const TransferFunction& g1, const TransferFunction& g2, double a,
                              double tol);

}  // namespace spectral
