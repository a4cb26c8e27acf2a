#pragma once

// Entire-in-w evaluation of the constant-coefficient propagator of
// y'' = -w y over a step s:
//   y(s)  = C(w,s) y0 + S(w,s) y0',   y'(s) = -w S(w,s) y0 + C(w,s) y0',
// with C = cos(sqrt(w) s) and S = sin(sqrt(w) s)/sqrt(w).  Both are entire
// functions of w, so a single code path (trig / hyperbolic / Taylor) covers
// oscillatory and evanescent regimes for real or complex w.

#include <cmath>
#include <complex>

#include "spectral/common.hpp"

namespace spectral {

namespace detail {
template <typename T> struct scalar_real { using type = T; };
template <typename T> struct scalar_real<std::complex<T>> { using type = T; };
}  // namespace detail

template <typename W>
struct CSPair {
    W c;  // cos(sqrt(w) s)
    W s;  // sin(sqrt(w) s)/sqrt(w)
};

template <typename W>
CSPair<W> cs_pair(W w, typename detail::scalar_real<W>::type step) {
    using std::abs;
    using Real = typename detail::scalar_real<W>::type;
    const Real s2 = step * step;
    W u = w * s2;
    if (abs(u) < Real(1e-4)) {
        W c = Real(1) - u / Real(2) * (Real(1) - u / Real(12) * (Real(1) - u / Real(30)));
        W sn = Real(1) - u / Real(6) * (Real(1) - u / Real(20) * (Real(1) - u / Real(42)));
        return {c, step * sn};
    }
    W r = std::sqrt(w);
    W rs = r * step;
    return {std::cos(rs), std::sin(rs) / r};
}

/// Real-argument overload: hyperbolic branch for w < 0.
inline CSPair<double> cs_pair(double w, double step) {
    double u = w * step * step;
    if (std::abs(u) < 1e-4) {
        double c = 1 - u / 2 * (1 - u / 12 * (1 - u / 30));
        double sn = 1 - u / 6 * (1 - u / 20 * (1 - u / 42));
        return {c, step * sn};
    }
    if (w > 0) {
        double r = std::sqrt(w);
        return {std::cos(r * step), std::sin(r * step) / r};
    }
    double k = std::sqrt(-w);
    return {std::cosh(k * step), std::sinh(k * step) / k};
}

// d/dw of C and S, used for spectral-parameter derivatives of propagated
// solutions: dC/dw = -(s/2) S,  dS/dw = (s C - S)/(2w).
template <typename W>
struct CSDeriv {
    W dc;
    W ds;
};

template <typename W>
CSDeriv<W> cs_deriv(W w, typename detail::scalar_real<W>::type step, const CSPair<W>& cs) {
    using std::abs;
    using Real = typename detail::scalar_real<W>::type;
    W dc = -(step / Real(2)) * cs.s;
    W u = w * step * step;
    W ds;
    if (abs(u) < Real(1e-4)) {
        Real s3 = step * step * step;
        ds = -(s3 / Real(6)) * (Real(1) - u / Real(10) * (Real(1) - u / Real(28)));
    } else {
        ds = (step * cs.c - cs.s) / (Real(2) * w);
    }
    return {dc, ds};
}

// Closed-form panel integrals of squared solutions:
//   Icc = int_0^h C^2 ds  = (h + C(h) S(h)) / 2
//   Ics = int_0^h C S ds  = S(h)^2 / 2
//   Iss = int_0^h S^2 ds  = (h - C(h) S(h)) / (2w)
template <typename W>
struct SquareIntegrals {
    W cc, cs, ss;
};

template <typename W>
SquareIntegrals<W> cs_square_integrals(W w, typename detail::scalar_real<W>::type h,
                                       const CSPair<W>& end) {
    using std::abs;
    using Real = typename detail::scalar_real<W>::type;
    W cc = (h + end.c * end.s) / Real(2);
    W cs = end.s * end.s / Real(2);
    W u = w * h * h;
    W ss;
    if (abs(u) < Real(1e-4)) {
        Real h3 = h * h * h;
        ss = (h3 / Real(3)) * (Real(1) - u / Real(5) * (Real(1) - Real(3) * u / Real(28)));
    } else {
        ss = (h - end.c * end.s) / (Real(2) * w);
    }
    return {cc, cs, ss};
}

/// Zeros of y(s) = y0 C(w,s) + y0' S(w,s) on the open panel (0, h), real data.
/// In the oscillatory regime the count is exact (phase arithmetic); otherwise
/// a cosh/sinh combination has at most one zero, detected by sign change.
inline int count_zeros(double w, double h, double y0, double dy0, double yh) {
    if (w * h * h > 1e-8) {
        double omega = std::sqrt(w);
        // y = R cos(omega s - delta): zeros at omega s = delta + pi/2 + m pi
        double delta = std::atan2(dy0 / omega, y0);
        double a = -(delta + kPi / 2) / kPi;
        double b = (omega * h - delta - kPi / 2) / kPi;
        int m_lo = static_cast<int>(std::floor(a)) + 1;  // smallest integer > a
        int m_hi = static_cast<int>(std::ceil(b)) - 1;   // largest integer < b
        return m_hi >= m_lo ? m_hi - m_lo + 1 : 0;
    }
    if (y0 == 0.0 || yh == 0.0) return 0;
    return (y0 > 0) != (yh > 0) ? 1 : 0;
}

}  // namespace spectral
