#include "spectral/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "spectral/oscillator.hpp"

namespace spectral {

namespace {

// 2x2 fundamental matrix [[phi, psi], [phi', psi']] at the right edge,
// renormalized per panel; true matrix = returned matrix * e^{logscale}.
struct ScaledMatrix {
    Complex m00, m01, m10, m11;
    double logscale = 0;
};

// Substep count keeping the per-step growth factor well below overflow.
std::size_t substeps(double h, Complex w) {
    double rate = std::sqrt(std::abs(w));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(h * (rate + 1) / 30.0)));
}

ScaledMatrix propagate_scaled(const PanelScheme& panels, double alpha, Complex z) {
    ScaledMatrix s;
    s.m00 = std::sin(alpha);
    s.m01 = -std::cos(alpha);
    s.m10 = std::cos(alpha);
    s.m11 = std::sin(alpha);
    for (std::size_t p = 0; p + 1 < panels.edges.size(); ++p) {
        Complex w = z - panels.qbar[p];
        std::size_t k = substeps(panels.edges[p + 1] - panels.edges[p], w);
        double h = (panels.edges[p + 1] - panels.edges[p]) / static_cast<double>(k);
        auto cs = cs_pair(w, h);
        for (std::size_t i = 0; i < k; ++i) {
            Complex n00 = cs.c * s.m00 + cs.s * s.m10;
            Complex n10 = -w * cs.s * s.m00 + cs.c * s.m10;
            Complex n01 = cs.c * s.m01 + cs.s * s.m11;
            Complex n11 = -w * cs.s * s.m01 + cs.c * s.m11;
            double norm = std::max({std::abs(n00), std::abs(n01), std::abs(n10), std::abs(n11)});
            if (!(norm > 0) || !std::isfinite(norm))
                throw NumericalError("propagate_scaled: degenerate state", norm);
            s.m00 = n00 / norm;
            s.m01 = n01 / norm;
            s.m10 = n10 / norm;
            s.m11 = n11 / norm;
            s.logscale += std::log(norm);
        }
    }
    return s;
}

Complex moebius_m(const ScaledMatrix& s, const BoundaryCoefficient& gamma, Complex z) {
    Complex num, den;
    if (std::holds_alternative<Infinity>(gamma)) {
        num = s.m01;
        den = s.m00;
    } else {
        Complex g = std::holds_alternative<double>(gamma)
                        ? Complex(std::get<double>(gamma))
                        : std::get<std::function<Complex(Complex)>>(gamma)(z);
        num = s.m11 - s.m01 * g;
        den = s.m10 - s.m00 * g;
    }
    if (std::abs(den) < 1e-300)
        throw NumericalError("scaled weyl: degenerate denominator", std::abs(den));
    return num / den;
}

// Backward-propagated Weyl solution chi on the given panel scheme: scaled
// values (v, v') at every edge plus the per-edge log scale; the true
// solution is v e^{L} up to an overall constant.
struct BackwardSolution {
    std::vector<Complex> v, dv;
    std::vector<double> logscale;
};

BackwardSolution propagate_backward(const PanelScheme& panels, const BoundaryCoefficient& gamma,
                                    Complex z) {
    std::size_t n = panels.qbar.size();
    BackwardSolution b;
    b.v.resize(n + 1);
    b.dv.resize(n + 1);
    b.logscale.resize(n + 1);
    if (std::holds_alternative<Infinity>(gamma)) {
        b.v[n] = 0;
        b.dv[n] = 1;
    } else {
        Complex g = std::holds_alternative<double>(gamma)
                        ? Complex(std::get<double>(gamma))
                        : std::get<std::function<Complex(Complex)>>(gamma)(z);
        b.v[n] = 1;
        b.dv[n] = g;
    }
    double nrm = std::max({std::abs(b.v[n]), std::abs(b.dv[n]), 1e-300});
    b.v[n] /= nrm;
    b.dv[n] /= nrm;
    b.logscale[n] = std::log(nrm);
    for (std::size_t p = n; p-- > 0;) {
        Complex w = z - panels.qbar[p];
        std::size_t k = substeps(panels.edges[p + 1] - panels.edges[p], w);
        double h = (panels.edges[p + 1] - panels.edges[p]) / static_cast<double>(k);
        auto cs = cs_pair(w, h);
        Complex v = b.v[p + 1], dv = b.dv[p + 1];
        double lg = b.logscale[p + 1];
        for (std::size_t i = 0; i < k; ++i) {
            // inverse of the forward panel propagator (determinant 1)
            Complex vl = cs.c * v - cs.s * dv;
            Complex dvl = w * cs.s * v + cs.c * dv;
            double norm = std::max(std::abs(vl), std::abs(dvl));
            if (!(norm > 0) || !std::isfinite(norm))
                throw NumericalError("propagate_backward: degenerate state", norm);
            v = vl / norm;
            dv = dvl / norm;
            lg += std::log(norm);
        }
        b.v[p] = v;
        b.dv[p] = dv;
        b.logscale[p] = lg;
    }
    return b;
}

}  // namespace

RaySampling::RaySampling(double angle_, std::vector<double> radii_)
    : angle(angle_), radii(std::move(radii_)) {
    if (!(angle > 0) || !(angle < kPi))
        throw std::invalid_argument("RaySampling: angle must lie in (0, pi)");
    if (std::abs(angle) < 1e-12 || std::abs(angle - kPi) < 1e-12)
        throw std::invalid_argument("RaySampling: ray must be non-real");
    if (radii.size() < 4) throw std::invalid_argument("RaySampling: need at least 4 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0)) throw std::invalid_argument("RaySampling: radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::invalid_argument("RaySampling: radii must be strictly increasing");
    }
}

RaySampling RaySampling::standard(double angle, double r0, double r1, std::size_t n) {
    return RaySampling(angle, logspace(r0, r1, n));
}

std::vector<Complex> RaySampling::points() const {
    std::vector<Complex> z(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i)
        z[i] = radii[i] * Complex(std::cos(angle), std::sin(angle));
    return z;
}

DecayFit decay_fit(const std::function<Complex(Complex)>& m1,
                   const std::function<Complex(Complex)>& m2, const RaySampling& ray,
                   const std::function<Complex(Complex)>& difference) {
    if (!m1 || !m2) throw std::invalid_argument("decay_fit: null Weyl handle");
    auto zs = ray.points();
    std::size_t n = zs.size();
    std::vector<Complex> d(n);
    std::vector<double> scale(n);
    parallel_for(n, [&](std::size_t j) {
        if (difference) {
            d[j] = difference(zs[j]);
            scale[j] = 0;  // compensated values trusted down to the underflow floor
        } else {
            Complex a = m1(zs[j]), b = m2(zs[j]);
            d[j] = a - b;
            scale[j] = std::abs(a) + std::abs(b);
        }
    });

    DecayFit out;
    for (std::size_t j = 0; j < n; ++j) {
        double ad = std::abs(d[j]);
        if (!(ad >= 1e-300) || ad < 1e-13 * scale[j]) {
            ++out.clipped;
            continue;
        }
        out.used_radii.push_back(ray.radii[j]);
        out.abscissa.push_back(-sqrt_minus(zs[j]).real());
        out.log_diff.push_back(std::log(ad));
    }
    out.used = out.abscissa.size();
    if (out.used == 0) {
        // indistinguishable to machine precision: bound a from below by the
        // largest radius whose decay factor is still representable
        out.indistinguishable = true;
        out.a_hat = std::numeric_limits<double>::infinity();
        double xmax = sqrt_minus(zs.back()).real();
        out.a_lower_bound = std::log(1e300) / (2 * xmax);
        return out;
    }
    if (out.used < 4)
        throw NumericalError("decay_fit: fewer than 4 usable ray points",
                             static_cast<double>(out.used));

    // y = c x + p log r + b (the log r regressor absorbs the algebraic
    // prefactor); plain 2-parameter fit when points are scarce
    std::size_t cols = out.used >= 6 ? 3 : 2;
    Eigen::MatrixXd A(out.used, cols);
    Eigen::VectorXd y(out.used);
    for (std::size_t j = 0; j < out.used; ++j) {
        A(static_cast<long>(j), 0) = out.abscissa[j];
        A(static_cast<long>(j), 1) = 1.0;
        if (cols == 3) A(static_cast<long>(j), 2) = std::log(out.used_radii[j]);
        y(static_cast<long>(j)) = out.log_diff[j];
    }
    Eigen::VectorXd beta = A.colPivHouseholderQr().solve(y);
    out.c_hat = beta(0);
    out.log_C_hat = beta(1);
    out.a_hat = std::max(out.c_hat / 2, 0.0);

    Eigen::VectorXd res = y - A * beta;
    double ss_res = res.squaredNorm();
    double mean = y.mean();
    double ss_tot = (y.array() - mean).square().sum();
    out.r2 = ss_tot > 0 ? 1 - ss_res / ss_tot : 1.0;
    out.fitted.resize(out.used);
    Eigen::VectorXd fit = A * beta;
    for (std::size_t j = 0; j < out.used; ++j) out.fitted[j] = fit(static_cast<long>(j));
    return out;
}

std::function<Complex(Complex)> scaled_weyl_handle(SLProblem problem, BoundaryCoefficient gamma) {
    auto panels = std::make_shared<PanelScheme>(build_panels(problem.q, problem.ell));
    double alpha = problem.alpha;
    return [panels, alpha, gamma](Complex z) {
        auto s = propagate_scaled(*panels, alpha, z);
        return moebius_m(s, gamma, z);
    };
}

std::function<Complex(Complex)> weyl_difference_handle(SLProblem p1, SLProblem p2,
                                                       BoundaryCoefficient gamma) {
    if (std::abs(p1.ell - p2.ell) > 1e-12 * (1 + std::abs(p1.ell)))
        throw std::invalid_argument("weyl_difference_handle: problems must share ell");
    // union panel scheme so q-bars are comparable panel by panel
    auto s1 = build_panels(p1.q, p1.ell);
    auto s2 = build_panels(p2.q, p2.ell);
    std::vector<double> edges;
    edges.reserve(s1.edges.size() + s2.edges.size());
    std::merge(s1.edges.begin(), s1.edges.end(), s2.edges.begin(), s2.edges.end(),
               std::back_inserter(edges));
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [&](double u, double v) { return std::abs(u - v) < 1e-14 * p1.ell; }),
                edges.end());
    auto panels = std::make_shared<PanelScheme>();
    panels->edges = edges;
    auto q1 = std::make_shared<PanelScheme>(*panels);
    auto q2 = std::make_shared<PanelScheme>(*panels);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double mid = 0.5 * (edges[p] + edges[p + 1]);
        q1->qbar.push_back(p1.q(mid));
        q2->qbar.push_back(p2.q(mid));
    }
    // first panel where the potentials actually differ
    std::size_t first = q1->qbar.size();
    for (std::size_t p = 0; p < q1->qbar.size(); ++p) {
        if (std::abs(q1->qbar[p] - q2->qbar[p]) >
            1e-13 * (1 + std::abs(q1->qbar[p]) + std::abs(q2->qbar[p]))) {
            first = p;
            break;
        }
    }
    double alpha1 = p1.alpha, alpha2 = p2.alpha;
    auto mh1 = scaled_weyl_handle(p1, gamma);
    auto mh2 = scaled_weyl_handle(p2, gamma);
    return [q1, q2, first, alpha1, alpha2, gamma, mh1, mh2](Complex z) -> Complex {
        if (first == q1->qbar.size()) return Complex(0);
        auto b1 = propagate_backward(*q1, gamma, z);
        auto b2 = propagate_backward(*q2, gamma, z);
        std::size_t n = q1->qbar.size();
        // B(x) = chi1' chi2 - chi1 chi2' satisfies B' = (q1 - q2) chi1 chi2
        // and is exactly constant below `first`, so m1 - m2 = B(ell) - B(a)
        auto bracket = [&](std::size_t j) {
            return std::pair<Complex, double>(b1.dv[j] * b2.v[j] - b1.v[j] * b2.dv[j],
                                              b1.logscale[j] + b2.logscale[j]);
        };
        auto [ba, la] = bracket(first);
        auto [bl, ll] = bracket(n);
        Complex total = ba - bl * std::exp(std::min(ll - la, 700.0));
        // normalize chi_i = psi - m_i phi, so chi_i(0) = -cos a_i - m_i sin a_i
        Complex m1v = mh1(z), m2v = mh2(z);
        Complex c10 = -std::cos(alpha1) - m1v * std::sin(alpha1);
        Complex c20 = -std::cos(alpha2) - m2v * std::sin(alpha2);
        Complex v10 = b1.v[0], v20 = b2.v[0];
        if (std::abs(v10) < 1e-300 || std::abs(v20) < 1e-300)
            throw NumericalError("weyl_difference: vanishing backward solution",
                                 std::min(std::abs(v10), std::abs(v20)));
        double expo = la - b1.logscale[0] - b2.logscale[0];
        if (expo < -745) return Complex(0);  // below the double underflow floor
        return (c10 / v10) * (c20 / v20) * total * std::exp(expo);
    };
}

std::vector<Complex> phi_growth_check(const SLProblem& problem, double a,
                                      const RaySampling& ray) {
    if (!(a > 0) || a > problem.ell * (1 + 1e-12))
        throw std::invalid_argument("phi_growth_check: a outside (0, ell]");
    auto panels = build_panels(problem.q, a);
    auto zs = ray.points();
    std::vector<Complex> ratios(zs.size());
    parallel_for(zs.size(), [&](std::size_t j) {
        Complex z = zs[j];
        auto s = propagate_scaled(panels, problem.alpha, z);
        Complex root = sqrt_minus(z);
        Complex denom = std::sin(problem.alpha) + std::cos(problem.alpha) / root;
        // phi = m00 e^{logscale}; the exponent difference is O(1)
        ratios[j] = s.m00 * 2.0 * std::exp(Complex(s.logscale, 0) - a * root) / denom;
    });
    return ratios;
}

GrowthCheck nevanlinna_growth_check(const std::function<Complex(Complex)>& m,
                                    const RaySampling& ray) {
    if (!m) throw std::invalid_argument("nevanlinna_growth_check: null handle");
    auto zs = ray.points();
    GrowthCheck out;
    out.ratios.resize(zs.size());
    parallel_for(zs.size(), [&](std::size_t j) {
        out.ratios[j] = std::abs(m(zs[j])) / ray.radii[j];
    });
    out.max_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
    out.bounded = true;
    for (std::size_t j = ray.radii.size() / 4; j + 1 < out.ratios.size(); ++j)
        if (out.ratios[j + 1] > out.ratios[j] * (1 + 1e-6)) out.bounded = false;
    return out;
}

}  // namespace spectral
