#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "spectral/common.hpp"

namespace spectral {

/// 16-point Gauss-Legendre rule on [-1, 1] (positive half; rule is symmetric).
struct GaussLegendre16 {
    static constexpr std::array<double, 8> x = {
        0.0950125098376374401853193, 0.2816035507792589132304605,
        0.4580167776572273863424194, 0.6178762444026437484466718,
        0.7554044083550030338951012, 0.8656312023878317438804679,
        0.9445750230732325760779884, 0.9894009349916499325961542};
    static constexpr std::array<double, 8> w = {
        0.1894506104550684962853967, 0.1826034150449235888667637,
        0.1691565193950025381893121, 0.1495959888165767320815017,
        0.1246289712555338720524763, 0.0951585116824927848099251,
        0.0622535239386478928628438, 0.0271524594117540948517806};
};

/// Append the 16 GL nodes/weights for panel [a, b].
inline void gl16_panel(double a, double b, std::vector<double>& nodes,
                       std::vector<double>& weights) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 7; i >= 0; --i) {
        nodes.push_back(mid - half * GaussLegendre16::x[static_cast<std::size_t>(i)]);
        weights.push_back(half * GaussLegendre16::w[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < 8; ++i) {
        nodes.push_back(mid + half * GaussLegendre16::x[static_cast<std::size_t>(i)]);
        weights.push_back(half * GaussLegendre16::w[static_cast<std::size_t>(i)]);
    }
}

/// Composite GL16 over explicit panel edges.
template <typename F>
auto gl16_composite(const F& f, const std::vector<double>& edges) -> decltype(f(0.0)) {
    using R = decltype(f(0.0));
    R total{};
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double mid = 0.5 * (edges[p] + edges[p + 1]);
        double half = 0.5 * (edges[p + 1] - edges[p]);
        for (int i = 0; i < 8; ++i) {
            total += half * GaussLegendre16::w[static_cast<std::size_t>(i)] *
                     (f(mid - half * GaussLegendre16::x[static_cast<std::size_t>(i)]) +
                      f(mid + half * GaussLegendre16::x[static_cast<std::size_t>(i)]));
        }
    }
    return total;
}

/// Composite GL16 over n uniform panels on [a, b].
template <typename F>
auto gl16_uniform(const F& f, double a, double b, std::size_t n) -> decltype(f(0.0)) {
    std::vector<double> edges = linspace(a, b, n + 1);
    return gl16_composite(f, edges);
}

namespace detail {
template <typename F, typename R>
R adaptive_simpson_rec(const F& f, double a, double b, R fa, R fm, R fb, R whole, double tol,
                       int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    R flm = f(lm), frm = f(rm);
    R left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    R right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    R delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance.
template <typename F>
auto adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 30)
    -> decltype(f(0.0)) {
    using R = decltype(f(0.0));
    R fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    R whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace spectral
