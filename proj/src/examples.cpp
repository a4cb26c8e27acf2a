#include "spectral/examples.hpp"

#include <cmath>
#include <stdexcept>

namespace spectral::examples {

namespace {

// tail fit shared by the closed-form measures: sqrt(lambda_k) ~ c k + d with
// near-constant weights
std::optional<TailDescriptor> fit_sqrt_tail(const std::vector<Atom>& atoms) {
    std::size_t n = atoms.size();
    if (n < 8 || !(atoms[n - 6].location > 0)) return {};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t j = n - 6; j < n; ++j) {
        double k = static_cast<double>(j);
        double y = std::sqrt(atoms[j].location);
        sx += k;
        sy += y;
        sxx += k * k;
        sxy += k * y;
    }
    double c = (6 * sxy - sx * sy) / (6 * sxx - sx * sx);
    double d = (sy - c * sx) / 6;
    double wbar = 0;
    for (std::size_t j = n - 5; j < n; ++j) wbar += atoms[j].weight / 5;
    if (!(c > 0)) return {};
    TailDescriptor td;
    td.c = c;
    td.d = d;
    td.p = 2;
    td.w = wbar;
    td.q = 0;
    td.k_start = static_cast<long>(n);
    return td;
}

}  // namespace

SLProblem example1() { return SLProblem(1.0, kPi / 2, Potential::constant(0.0)); }

Complex example1_m(const BoundaryCoefficient& gamma, Complex z) {
    Complex r = std::sqrt(z);
    Complex phi = std::cos(r), dphi = -r * std::sin(r);
    Complex psi = std::sin(r) / r, dpsi = std::cos(r);
    if (std::holds_alternative<Infinity>(gamma)) return psi / phi;
    Complex g = std::holds_alternative<double>(gamma)
                    ? Complex(std::get<double>(gamma))
                    : std::get<std::function<Complex(Complex)>>(gamma)(z);
    return (dpsi - psi * g) / (dphi - phi * g);
}

double example1_phi0_closed(double t) {
    // t^2/2 + v - v^2/2 with v = t mod 2; equals t on [0, 2], 3t - 4 on [2, 4]
    double v = std::fmod(t, 2.0);
    return t * t / 2 + v - v * v / 2;
}

double example1_phiinf_closed(double t) {
    double u = std::fmod(t, 4.0);
    return u <= 2 ? u : 4 - u;
}

SLProblem example2(double ell) {
    if (!(ell > 0) || !(ell < 1))
        throw std::invalid_argument("example2: ell must lie in (0, 1)");
    auto q = Potential::expression([](double x) { return 2.0 / ((x - 1) * (x - 1)); },
                                   "2/(x-1)^2");
    return SLProblem(ell, kPi / 2, q);
}

Complex example2_phi(double x, Complex z) {
    Complex r = std::sqrt(z), s = std::sin(x * r), c = std::cos(x * r);
    Complex a = (1.0 - z * x) / (x - 1.0);
    Complex b = -x / (x - 1.0) + z;
    return (a * s / r + b * c) / z;
}

Complex example2_phi_prime(double x, Complex z) {
    Complex r = std::sqrt(z), s = std::sin(x * r), c = std::cos(x * r);
    Complex a = (1.0 - z * x) / (x - 1.0);
    Complex b = -x / (x - 1.0) + z;
    Complex da = (z - 1.0) / ((x - 1.0) * (x - 1.0));
    Complex db = 1.0 / ((x - 1.0) * (x - 1.0));
    return (da * s / r + a * c + db * c - b * r * s) / z;
}

Complex example2_psi(double x, Complex z) {
    Complex r = std::sqrt(z), s = std::sin(x * r), c = std::cos(x * r);
    Complex cc = z - 1.0 / (x - 1.0);
    Complex d = x / (x - 1.0);
    return (cc * s / r + d * c) / z;
}

Complex example2_psi_prime(double x, Complex z) {
    Complex r = std::sqrt(z), s = std::sin(x * r), c = std::cos(x * r);
    Complex cc = z - 1.0 / (x - 1.0);
    Complex d = x / (x - 1.0);
    Complex dc = 1.0 / ((x - 1.0) * (x - 1.0));
    Complex dd = -1.0 / ((x - 1.0) * (x - 1.0));
    return (dc * s / r + cc * c + dd * c - d * r * s) / z;
}

Complex example2_ms(Complex z) {
    Complex r = std::sqrt(z), t = std::tan(r);
    return (r - t) / ((1.0 - z) * t - r);
}

std::function<Complex(Complex)> example2_gamma_tail() {
    return [](Complex z) {
        double x = 0.5;
        Complex ms = example2_ms(z);
        Complex chi = ms * example2_phi(x, z) - example2_psi(x, z);
        Complex dchi = ms * example2_phi_prime(x, z) - example2_psi_prime(x, z);
        return dchi / chi;
    };
}

namespace {

// entire form of the m_s denominator: E(z) = (1 - z) sin(sqrt z) - sqrt z cos(sqrt z);
// m_s = (sqrt z cos - sin)/E, so residues are -N(l)/E'(l)
Complex ms_den(Complex z) {
    Complex r = std::sqrt(z);
    return (1.0 - z) * std::sin(r) - r * std::cos(r);
}

Complex ms_num(Complex z) {
    Complex r = std::sqrt(z);
    return r * std::cos(r) - std::sin(r);
}

}  // namespace

SpectralMeasure example2_singular_measure(std::size_t count) {
    std::vector<Atom> atoms;
    double du = kPi / 64;
    double u_prev = du * 1e-3;
    double d_prev = ms_den(u_prev * u_prev).real();
    std::size_t guard = 256 * (count + 8);
    for (std::size_t i = 1; atoms.size() < count && i < guard; ++i) {
        double u = u_prev + du;
        double d = ms_den(u * u).real();
        if (d == 0 || d * d_prev < 0) {
            double lo = u_prev, hi = u;
            double dlo = d_prev;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + hi); ++it) {
                double mid = 0.5 * (lo + hi);
                double dm = ms_den(mid * mid).real();
                if (dm == 0) {
                    lo = hi = mid;
                    break;
                }
                if (dm * dlo < 0)
                    hi = mid;
                else {
                    lo = mid;
                    dlo = dm;
                }
            }
            double lam = 0.25 * (lo + hi) * (lo + hi);
            constexpr double h = 1e-100;
            Complex dc = ms_den(Complex(lam, h));
            double dden = dc.imag() / h;
            double w = -ms_num(Complex(lam, 0)).real() / dden;
            if (w > 0) atoms.push_back({lam, w});
        }
        u_prev = u;
        d_prev = d;
    }
    return SpectralMeasure(atoms, {}, fit_sqrt_tail(atoms));
}

Hamiltonian example3() {
    return Hamiltonian(2.0, Potential::constant(0.5), Potential::constant(0.0),
                       Potential::constant(0.5));
}

double example3_ginf_closed(double t) {
    double u = std::fmod(std::abs(t) + 2.0, 4.0) - 2.0;
    return (u * u / 2 - std::abs(u)) - t * t / 2;
}

Hamiltonian example4() {
    return Hamiltonian(
        1.0, Potential::expression([](double x) { return (x - 1) * (x - 1); }, "(x-1)^2"),
        Potential::constant(0.0),
        Potential::expression([](double x) { return 1.0 / ((x - 1) * (x - 1)); }, "(x-1)^(-2)"),
        true);
}

Eigen::Matrix2cd example4_W(double x, Complex z) {
    Complex s = std::sin(z * x), c = std::cos(z * x);
    Eigen::Matrix2cd w;
    w(0, 0) = (s - z * c) / (z * (x - 1));
    w(0, 1) = (1.0 / (z * z) - (x - 1)) * s - x * c / z;
    w(1, 0) = s / (x - 1);
    w(1, 1) = s / z - (x - 1) * c;
    return w;
}

double example4_g_closed(double t) {
    double u = std::fmod(t, 2.0);
    if (u <= 0) u += 2.0;  // the bracket lives on (0, 2]
    return u * u / 2 - u;
}

Hamiltonian example5() {
    return Hamiltonian(
        2.0,
        Potential::expression([](double x) { return x < 1 ? 0.0 : (x - 2) * (x - 2); },
                              "[x<1: 0, else (x-2)^2]", {1.0}),
        Potential::constant(0.0),
        Potential::expression([](double x) { return x < 1 ? 1.0 : 1.0 / ((x - 2) * (x - 2)); },
                              "[x<1: 1, else (x-2)^(-2)]", {1.0}),
        true);
}

double example5_f_closed(double t) {
    double u = std::fmod(std::abs(t), 4.0);
    if (u > 2) u = 4 - u;
    return 1.0 - u;
}

}  // namespace spectral::examples
