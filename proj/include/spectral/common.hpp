#pragma once

#include <complex>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace spectral {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Requested tolerance could not be met; carries the achieved estimate.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved = -1.0)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

/// Principal square root of -z: the branch with positive real part.
template <typename R>
std::complex<R> sqrt_minus(std::complex<R> z) {
    std::complex<R> r = std::sqrt(-z);
    if (r.real() < R(0)) r = -r;
    return r;
}

inline bool is_real(Complex z, double tol = 0.0) {
    return std::abs(z.imag()) <= tol;
}

/// Worker count: hardware concurrency capped by SPECTRAL_TRANSFER_THREADS.
inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("SPECTRAL_TRANSFER_THREADS")) {
        long cap = std::atol(env);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

/// Chunked parallel loop over [0, n). Falls back to serial for small n.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned workers = worker_count();
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

/// Uniform grid helper: n points from t0 to t1 inclusive.
inline std::vector<double> linspace(double t0, double t1, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {t0};
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

/// Log-spaced grid from r0 to r1 (both positive).
inline std::vector<double> logspace(double r0, double r1, std::size_t n) {
    auto g = linspace(std::log(r0), std::log(r1), n);
    for (auto& x : g) x = std::exp(x);
    return g;
}

}  // namespace spectral
