#include "spectral/string.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spectral/oscillator.hpp"
#include "spectral/quadrature.hpp"

namespace spectral {

namespace {

constexpr std::size_t kStringMinPanels = 2000;

// Panel scheme for propagation on [0, x]: piecewise-constant density with
// atom jumps pinned to panel edges.  atom_edge[i] = (edge index, jump) with
// edge index < edges.size() - 1, so a mass sitting exactly at x is excluded
// (left-derivative convention).
struct StringScheme {
    std::vector<double> edges;
    std::vector<double> rbar;
    std::vector<std::pair<std::size_t, double>> atom_edge;
};

StringScheme build_string_scheme(const MassDistribution& s, double x) {
    std::vector<double> coarse{0.0, x};
    for (double b : s.density().breakpoints())
        if (b > 0 && b < x) coarse.push_back(b);
    for (const auto& a : s.atoms())
        if (a.x > 0 && a.x < x) coarse.push_back(a.x);
    std::sort(coarse.begin(), coarse.end());
    coarse.erase(std::unique(coarse.begin(), coarse.end(),
                             [&](double u, double v) { return std::abs(u - v) < 1e-15 * x; }),
                 coarse.end());

    StringScheme sc;
    double hmax = x / static_cast<double>(kStringMinPanels);
    sc.edges.push_back(0.0);
    for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
        double len = coarse[i + 1] - coarse[i];
        auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / hmax)));
        for (std::size_t j = 1; j <= n; ++j)
            sc.edges.push_back(coarse[i] + len * static_cast<double>(j) / static_cast<double>(n));
    }
    sc.edges.back() = x;
    sc.rbar.resize(sc.edges.size() - 1);
    for (std::size_t i = 0; i + 1 < sc.edges.size(); ++i)
        sc.rbar[i] = s.density()(0.5 * (sc.edges[i] + sc.edges[i + 1]));

    for (const auto& a : s.atoms()) {
        if (a.x >= x) continue;
        auto it = std::lower_bound(sc.edges.begin(), sc.edges.end(), a.x - 1e-15 * (1 + x));
        auto idx = static_cast<std::size_t>(it - sc.edges.begin());
        sc.atom_edge.emplace_back(idx, a.jump);
    }
    std::sort(sc.atom_edge.begin(), sc.atom_edge.end());
    return sc;
}

// Fundamental pair at the right edge of the scheme; Z = double (real
// spectral parameter) or Complex.  Returns {phi, phi', psi, psi'}.
template <typename Z>
std::array<Z, 4> propagate_string(const StringScheme& sc, Z z) {
    Z phi = 1.0, dphi = 0.0, psi = 0.0, dpsi = 1.0;
    std::size_t ai = 0;
    for (std::size_t i = 0; i + 1 < sc.edges.size(); ++i) {
        while (ai < sc.atom_edge.size() && sc.atom_edge[ai].first == i) {
            double jump = sc.atom_edge[ai].second;
            dphi -= z * phi * jump;
            dpsi -= z * psi * jump;
            ++ai;
        }
        double h = sc.edges[i + 1] - sc.edges[i];
        Z w = z * sc.rbar[i];
        auto cs = cs_pair(w, h);
        Z nphi = cs.c * phi + cs.s * dphi;
        Z ndphi = -w * cs.s * phi + cs.c * dphi;
        Z npsi = cs.c * psi + cs.s * dpsi;
        Z ndpsi = -w * cs.s * psi + cs.c * dpsi;
        phi = nphi;
        dphi = ndphi;
        psi = npsi;
        dpsi = ndpsi;
    }
    return {phi, dphi, psi, dpsi};
}

void check_regular(const MassDistribution& s) {
    double total = s.total_mass();
    if (!std::isfinite(s.ell()) || !std::isfinite(total))
        throw std::invalid_argument("string: not regular (infinite length or mass)");
    if (!(total > 0)) throw std::invalid_argument("string: mass distribution vanishes");
}

}  // namespace

MassDistribution::MassDistribution(double ell, Potential density, std::vector<StringAtom> atoms)
    : ell_(ell), density_(std::move(density)), atoms_(std::move(atoms)) {
    if (!(ell > 0) || !std::isfinite(ell))
        throw std::invalid_argument("MassDistribution: need finite ell > 0");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const StringAtom& a, const StringAtom& b) { return a.x < b.x; });
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!(atoms_[i].jump > 0))
            throw std::invalid_argument("MassDistribution: atom jumps must be positive");
        if (atoms_[i].x < 0 || atoms_[i].x > ell_)
            throw std::invalid_argument("MassDistribution: atom outside [0, ell]");
        if (i > 0 && !(atoms_[i].x > atoms_[i - 1].x))
            throw std::invalid_argument("MassDistribution: duplicate atom positions");
    }
    double dmass = 0;
    for (std::size_t i = 0; i < 257; ++i) {
        double x = ell_ * static_cast<double>(i) / 256.0;
        double r = density_(x);
        if (r < -1e-12) throw std::invalid_argument("MassDistribution: negative density");
        dmass += std::max(r, 0.0);
    }
    purely_atomic_ = dmass * ell_ / 257.0 < 1e-14;
    if (purely_atomic_ && atoms_.empty())
        throw std::invalid_argument("MassDistribution: M must be positive for x > 0");
}

MassDistribution MassDistribution::homogeneous(double ell, double density) {
    return MassDistribution(ell, Potential::constant(density));
}

MassDistribution MassDistribution::atoms_only(double ell, std::vector<StringAtom> atoms) {
    return MassDistribution(ell, Potential::constant(0.0), std::move(atoms));
}

double MassDistribution::mass(double x) const {
    x = std::min(x, ell_);
    double m = 0;
    if (!purely_atomic_ && x > 0) {
        std::vector<double> edges{0.0, x};
        for (double b : density_.breakpoints())
            if (b > 0 && b < x) edges.push_back(b);
        std::sort(edges.begin(), edges.end());
        m = gl16_composite([&](double t) { return std::max(density_(t), 0.0); }, edges);
    }
    for (const auto& a : atoms_)
        if (a.x <= x) m += a.jump;
    return m;
}

double MassDistribution::travel_time(double x) const {
    if (purely_atomic_ || !(x > 0)) return 0;
    x = std::min(x, ell_);
    std::vector<double> coarse{0.0, x};
    for (double b : density_.breakpoints())
        if (b > 0 && b < x) coarse.push_back(b);
    std::sort(coarse.begin(), coarse.end());
    std::vector<double> edges;  // refine: sqrt(rho) has a kink wherever rho hits 0
    edges.push_back(0.0);
    for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
        std::size_t n = 32;
        for (std::size_t j = 1; j <= n; ++j)
            edges.push_back(coarse[i] + (coarse[i + 1] - coarse[i]) * static_cast<double>(j) /
                                            static_cast<double>(n));
    }
    return gl16_composite([&](double t) { return std::sqrt(std::max(density_(t), 0.0)); }, edges);
}

FundamentalValues string_fundamental(const MassDistribution& s, Complex z, double x, double tol) {
    check_regular(s);
    if (x < 0 || x > s.ell() * (1 + 1e-12))
        throw std::invalid_argument("string_fundamental: x outside [0, ell]");
    FundamentalValues out;
    out.x = x;
    out.z = z;
    if (x == 0) {
        out.phi = 1;
        out.phi_prime = 0;
        out.psi = 0;
        out.psi_prime = 1;
        return out;
    }
    auto sc = build_string_scheme(s, std::min(x, s.ell()));
    auto v = propagate_string(sc, z);
    out.phi = v[0];
    out.phi_prime = v[1];
    out.psi = v[2];
    out.psi_prime = v[3];
    double wr = std::abs(out.wronskian() - 1.0);
    double scale = std::max({std::abs(out.phi) * std::abs(out.psi_prime),
                             std::abs(out.phi_prime) * std::abs(out.psi), 1.0});
    if (wr > tol * scale)
        throw NumericalError("string_fundamental: Wronskian drift", wr / scale);
    return out;
}

Complex string_weyl(const MassDistribution& s, const BoundaryCoefficient& gamma, Complex z) {
    auto f = string_fundamental(s, z, s.ell());
    Complex num, den;
    if (std::holds_alternative<Infinity>(gamma)) {
        num = f.psi_prime;
        den = f.phi_prime;
    } else if (std::holds_alternative<double>(gamma)) {
        double g = std::get<double>(gamma);
        if (!(g >= 0)) throw std::invalid_argument("string_weyl: gamma must be >= 0");
        num = f.psi_prime * g + f.psi;
        den = f.phi_prime * g + f.phi;
    } else {
        Complex g = std::get<std::function<Complex(Complex)>>(gamma)(z);
        num = f.psi_prime * g + f.psi;
        den = f.phi_prime * g + f.phi;
    }
    if (std::abs(den) < 1e-13 * (1 + std::abs(num)))
        throw NumericalError("string_weyl: degenerate denominator", std::abs(den));
    return num / den;
}

namespace {

// D(lambda) and N(lambda) of the eigenvalue condition, with D'(lambda) by
// complex step (the propagation is entire in z with real coefficients).
struct DenNum {
    double den;
    double dden;
    double num;
};

DenNum eval_marker(const StringScheme& sc, bool dirichlet_like, double gamma, double lambda) {
    constexpr double h = 1e-100;
    auto v = propagate_string(sc, Complex(lambda, h));
    Complex den, num;
    if (dirichlet_like) {
        den = v[1];
        num = v[3];
    } else {
        den = v[1] * gamma + v[0];
        num = v[3] * gamma + v[2];
    }
    return {den.real(), den.imag() / h, num.real()};
}

double real_den(const StringScheme& sc, bool dirichlet_like, double gamma, double lambda) {
    auto v = propagate_string(sc, lambda);
    return dirichlet_like ? v[1] : v[1] * gamma + v[0];
}

}  // namespace

SpectralMeasure string_spectral_measure(const MassDistribution& s,
                                        const BoundaryCoefficient& gamma, std::size_t count) {
    check_regular(s);
    if (count == 0) throw std::invalid_argument("string_spectral_measure: count must be positive");
    bool dirichlet_like = std::holds_alternative<Infinity>(gamma);
    double g = 0;
    if (!dirichlet_like) {
        if (!std::holds_alternative<double>(gamma))
            throw std::invalid_argument("string_spectral_measure: need constant gamma");
        g = std::get<double>(gamma);
        if (!(g >= 0))
            throw std::invalid_argument("string_spectral_measure: gamma must be >= 0");
    }
    auto sc = build_string_scheme(s, s.ell());

    std::vector<Atom> atoms;
    if (dirichlet_like) {
        // phi'(ell; 0) = 0 identically: lambda = 0 is always an eigenvalue
        // with residue 1 / (mass seen by the propagation)
        auto dn = eval_marker(sc, true, 0, 0.0);
        atoms.push_back({0.0, -dn.num / dn.dden});
    }

    // collect brackets, then bisect
    std::vector<std::pair<double, double>> brackets;
    double a_total = s.travel_time(s.ell());
    if (a_total > 1e-9) {
        double du = (kPi / a_total) / 8.0;
        double u_prev = dirichlet_like ? du * 1e-4 : 0.0;
        double d_prev = real_den(sc, dirichlet_like, g, u_prev * u_prev);
        std::size_t need = count - atoms.size();
        std::size_t guard = 64 * (count + 8);
        for (std::size_t i = 1; brackets.size() < need && i < guard; ++i) {
            double u = u_prev + du;
            double d = real_den(sc, dirichlet_like, g, u * u);
            if (d == 0 || d * d_prev < 0) brackets.emplace_back(u_prev * u_prev, u * u);
            u_prev = u;
            d_prev = d;
        }
    } else {
        // purely atomic string: finitely many eigenvalues, bounded via
        // Gershgorin on the equivalent Jacobi matrix
        double lam_hi = 0;
        const auto& as = s.atoms();
        for (std::size_t j = 0; j < as.size(); ++j) {
            if (as[j].x >= s.ell()) continue;
            double stiffness = 0;
            if (as[j].x > 0) stiffness += 1.0 / (as[j].x - (j > 0 ? as[j - 1].x : 0.0));
            double right = (j + 1 < as.size() ? as[j + 1].x : s.ell()) - as[j].x;
            if (right > 0) stiffness += 1.0 / right;
            lam_hi = std::max(lam_hi, 2.5 * stiffness / as[j].jump);
        }
        if (lam_hi > 0) {
            double lo = lam_hi * 1e-14;
            std::size_t n = 200000;
            double ratio = std::pow(lam_hi / lo, 1.0 / static_cast<double>(n));
            double l_prev = dirichlet_like ? lo : 0.0;
            double d_prev = real_den(sc, dirichlet_like, g, l_prev);
            double lam = lo;
            for (std::size_t i = 0; i < n; ++i, lam *= ratio) {
                double d = real_den(sc, dirichlet_like, g, lam);
                if (d == 0 || d * d_prev < 0) brackets.emplace_back(l_prev, lam);
                l_prev = lam;
                d_prev = d;
            }
        }
    }

    std::vector<Atom> found(brackets.size());
    parallel_for(brackets.size(), [&](std::size_t i) {
        auto [lo, hi] = brackets[i];
        double dlo = real_den(sc, dirichlet_like, g, lo);
        for (int it = 0; it < 200 && hi - lo > 1e-14 * (1 + hi); ++it) {
            double mid = 0.5 * (lo + hi);
            double dm = real_den(sc, dirichlet_like, g, mid);
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
        double lam = 0.5 * (lo + hi);
        auto dn = eval_marker(sc, dirichlet_like, g, lam);
        found[i] = {lam, -dn.num / dn.dden};
    });
    for (const auto& a : found) {
        if (atoms.size() >= count) break;
        if (a.weight > 0 && a.location >= -1e-12) atoms.push_back(a);
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });

    std::optional<TailDescriptor> tail;
    std::size_t n = atoms.size();
    if (!s.purely_atomic() && n >= 8 && atoms[n - 6].location > 0) {
        // sqrt(lambda_k) ~ c k + d; constant-weight tail like the SL case
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
        double wbar = 0, wdev = 0;
        for (std::size_t j = n - 5; j < n; ++j) wbar += atoms[j].weight / 5;
        for (std::size_t j = n - 5; j < n; ++j)
            wdev = std::max(wdev, std::abs(atoms[j].weight - wbar));
        if (c > 0 && wdev < 0.2 * std::abs(wbar)) {
            TailDescriptor td;
            td.c = c;
            td.d = d;
            td.p = 2;
            td.w = wbar;
            td.q = 0;
            td.k_start = static_cast<long>(n);
            tail = td;
        }
    }
    return SpectralMeasure(std::move(atoms), {}, tail);
}

TransferFunction string_transfer(const std::shared_ptr<const SpectralMeasure>& measure,
                                 const std::vector<double>& t_grid, bool cosine_variant,
                                 double domain_bound) {
    if (!measure) throw std::invalid_argument("string_transfer: null measure");
    if (t_grid.empty() || t_grid.front() != 0)
        throw std::invalid_argument("string_transfer: grid must start at t = 0");
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i] < t_grid[i + 1]))
            throw std::invalid_argument("string_transfer: grid must be strictly increasing");
    if (!measure->supported_nonneg())
        throw std::invalid_argument("string_transfer: measure must live on [0, inf)");
    TransferFunction out;
    out.grid = t_grid;
    out.values.resize(t_grid.size());
    out.kernel = cosine_variant ? Kernel::CosineTransfer : Kernel::SlTransfer;
    out.scale = cosine_variant ? 1.0 : -1.0;
    out.provenance = measure;
    out.domain_bound = domain_bound > 0 ? domain_bound : t_grid.back();
    out.tag = cosine_variant ? "string-f" : "string-g";
    parallel_for(t_grid.size(), [&](std::size_t i) {
        out.values[i] = out.scale * measure->integrate_kernel(out.kernel, t_grid[i]);
    });
    return out;
}

double string_l_of_a(const MassDistribution& s, double a) {
    if (s.purely_atomic())
        throw std::invalid_argument(
            "string_l_of_a: purely atomic string (M' = 0 a.e.), localization radius undefined");
    if (!(a >= 0)) throw std::invalid_argument("string_l_of_a: need a >= 0");
    if (a == 0) return 0;
    double total = s.travel_time(s.ell());
    if (a > total * (1 + 1e-12))
        throw std::invalid_argument("string_l_of_a: a exceeds the total travel time");
    double lo = 0, hi = s.ell();
    for (int it = 0; it < 100 && hi - lo > 1e-13 * s.ell(); ++it) {
        double mid = 0.5 * (lo + hi);
        (s.travel_time(mid) >= a ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

CompareResult localize_string(const TransferFunction& g1, const TransferFunction& g2, double a,
                              double tol) {
    return compare_transfer(g1, g2, a, tol);
}

}  // namespace spectral
