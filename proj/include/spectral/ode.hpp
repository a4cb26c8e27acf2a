#pragma once

// Adaptive Dormand-Prince 5(4) integrator over std::array states.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "spectral/common.hpp"

namespace spectral {

namespace detail {
template <typename T, std::size_t N>
std::array<T, N> axpy(const std::array<T, N>& y, double h, const std::array<T, N>& k) {
    std::array<T, N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + h * k[i];
    return r;
}
}  // namespace detail

/// Integrate y' = f(t, y) from t0 to t1 (t1 > t0 or < t0), returning y(t1).
/// Throws NumericalError when the step size collapses.
template <typename F, typename T, std::size_t N>
std::array<T, N> rk45_integrate(const F& f, std::array<T, N> y, double t0, double t1,
                                double rtol = 1e-12, double atol = 1e-14) {
    using detail::axpy;
    if (t1 == t0) return y;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(std::abs(t1 - t0), 0.1 * (std::abs(t1 - t0) + 1.0));
    auto k1 = f(t, y);
    int rejected_in_a_row = 0;
    while (dir * (t1 - t) > 0) {
        if (dir * (t + h) > dir * t1) h = t1 - t;
        auto k2 = f(t + h / 5, axpy(y, h / 5, k1));
        std::array<T, N> s;
        for (std::size_t i = 0; i < N; ++i) s[i] = y[i] + h * (3.0 / 40 * k1[i] + 9.0 / 40 * k2[i]);
        auto k3 = f(t + 3 * h / 10, s);
        for (std::size_t i = 0; i < N; ++i)
            s[i] = y[i] + h * (44.0 / 45 * k1[i] - 56.0 / 15 * k2[i] + 32.0 / 9 * k3[i]);
        auto k4 = f(t + 4 * h / 5, s);
        for (std::size_t i = 0; i < N; ++i)
            s[i] = y[i] + h * (19372.0 / 6561 * k1[i] - 25360.0 / 2187 * k2[i] +
                               64448.0 / 6561 * k3[i] - 212.0 / 729 * k4[i]);
        auto k5 = f(t + 8 * h / 9, s);
        for (std::size_t i = 0; i < N; ++i)
            s[i] = y[i] + h * (9017.0 / 3168 * k1[i] - 355.0 / 33 * k2[i] +
                               46732.0 / 5247 * k3[i] + 49.0 / 176 * k4[i] -
                               5103.0 / 18656 * k5[i]);
        auto k6 = f(t + h, s);
        std::array<T, N> y5;
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] + 125.0 / 192 * k4[i] -
                                2187.0 / 6784 * k5[i] + 11.0 / 84 * k6[i]);
        auto k7 = f(t + h, y5);
        double err = 0;
        for (std::size_t i = 0; i < N; ++i) {
            T e4 = y[i] + h * (5179.0 / 57600 * k1[i] + 7571.0 / 16695 * k3[i] +
                               393.0 / 640 * k4[i] - 92097.0 / 339200 * k5[i] +
                               187.0 / 2100 * k6[i] + 1.0 / 40 * k7[i]);
            double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(y5[i] - e4) / sc);
        }
        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;  // FSAL
            rejected_in_a_row = 0;
        } else if (++rejected_in_a_row > 60) {
            throw NumericalError("rk45_integrate: step size collapsed", err);
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (std::abs(h) < 1e-15 * (std::abs(t) + 1.0))
            throw NumericalError("rk45_integrate: step underflow");
    }
    return y;
}

}  // namespace spectral
