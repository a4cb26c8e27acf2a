#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spectral/examples.hpp"
#include "spectral/sturm_liouville.hpp"

using namespace spectral;
namespace ex = spectral::examples;

namespace {

SLProblem random_problem(std::mt19937& rng) {
    std::uniform_real_distribution<double> ell_d(0.4, 3.0), alpha_d(0.1, kPi - 0.1),
        q_d(-8.0, 8.0);
    std::uniform_int_distribution<int> pieces(1, 4);
    double ell = ell_d(rng);
    int n = pieces(rng);
    std::vector<double> edges{0.0}, values;
    for (int i = 1; i < n; ++i) edges.push_back(ell * i / n);
    edges.push_back(ell);
    for (int i = 0; i < n; ++i) values.push_back(q_d(rng));
    return SLProblem(ell, alpha_d(rng), Potential::step(edges, values));
}

}  // namespace

TEST_CASE("free problem: closed-form fundamental system") {
    SLProblem p(1.0, kPi / 2, Potential::constant(0.0));
    Complex z(2.0, 3.0);
    Complex w = std::sqrt(z);
    for (double x : {0.25, 0.7, 1.0}) {
        auto f = solve_fundamental(p, z, x);
        CHECK(std::abs(f.phi - std::cos(w * x)) < 1e-12);
        CHECK(std::abs(f.phi_prime + w * std::sin(w * x)) < 1e-12);
        CHECK(std::abs(f.psi - std::sin(w * x) / w) < 1e-12);
        CHECK(std::abs(f.psi_prime - std::cos(w * x)) < 1e-12);
    }
}

TEST_CASE("Wronskian is identically one for 100 random problems") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> re(-30.0, 30.0), im(-20.0, 20.0), frac(0.1, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_problem(rng);
        Complex z(re(rng), im(rng));
        auto f = solve_fundamental(p, z, frac(rng) * p.ell);
        double scale = std::max(1.0, std::abs(f.phi) * std::abs(f.psi_prime) +
                                         std::abs(f.phi_prime) * std::abs(f.psi));
        CHECK(std::abs(f.wronskian() - 1.0) < 1e-9 * scale);
    }
}

TEST_CASE("Weyl functions are Herglotz and match the free closed form") {
    SLProblem p(1.0, kPi / 2, Potential::constant(0.0));
    CHECK(std::abs(weyl_m(p, 1.0, Infinity{}, Complex(-1, 0)) - std::tanh(1.0)) < 1e-12);

    std::mt19937 rng(888);
    std::uniform_real_distribution<double> re(-10.0, 10.0), im(0.2, 10.0), g_d(-3.0, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        auto pr = random_problem(rng);
        Complex z(re(rng), im(rng));
        for (BoundaryCoefficient gamma : {BoundaryCoefficient(g_d(rng)),
                                          BoundaryCoefficient(Infinity{})}) {
            Complex m = weyl_m(pr, pr.ell, gamma, z);
            CHECK(m.imag() > 0);
            CHECK(std::abs(weyl_m(pr, pr.ell, gamma, std::conj(z)) - std::conj(m)) < 1e-10);
        }
    }
}

TEST_CASE("free Neumann problem: eigenvalues and measure weights") {
    SLProblem p(1.0, kPi / 2, Potential::constant(0.0));
    auto mu = orthogonal_measure(p, 1.0, Infinity{}, 20);
    REQUIRE(mu.atoms().size() == 20);
    for (std::size_t k = 0; k < 20; ++k) {
        double r = (2.0 * (k + 1) - 1) * kPi / 2;
        CHECK(std::abs(mu.atoms()[k].location - r * r) < 1e-8 * (1 + r * r));
        CHECK(std::abs(mu.atoms()[k].weight - 2.0) < 1e-8);
    }
    CHECK(mu.tail().has_value());
}

TEST_CASE("Parseval identity: |y|^2 = sum of squared Fourier coefficients") {
    SLProblem p(1.0, kPi / 2, Potential::constant(0.0));
    auto mu = orthogonal_measure(p, 1.0, Infinity{}, 400);
    auto y = [](double x) { return x * (1 - x); };
    double sum = 0;
    for (const auto& atom : mu.atoms()) {
        double yhat = fourier_transform(p, y, atom.location);
        sum += yhat * yhat * atom.weight;
    }
    CHECK(std::abs(sum - 1.0 / 30.0) < 1e-9);  // int_0^1 x^2(1-x)^2 dx = 1/30
}

TEST_CASE("Bessel-type potential: solver matches the closed-form solutions") {
    auto p = ex::example2(0.5);
    for (Complex z : {Complex(1.0, 1.0), Complex(-2.0, 0.5), Complex(5.0, -3.0)}) {
        for (double x : {0.2, 0.5}) {
            auto f = solve_fundamental(p, z, x);
            CHECK(std::abs(f.phi - ex::example2_phi(x, z)) < 1e-10 * (1 + std::abs(f.phi)));
            CHECK(std::abs(f.phi_prime - ex::example2_phi_prime(x, z)) <
                  1e-10 * (1 + std::abs(f.phi_prime)));
            CHECK(std::abs(f.psi - ex::example2_psi(x, z)) < 1e-10 * (1 + std::abs(f.psi)));
            CHECK(std::abs(f.psi_prime - ex::example2_psi_prime(x, z)) <
                  1e-10 * (1 + std::abs(f.psi_prime)));
        }
    }
}

TEST_CASE("Bessel-type potential: nesting property of the Weyl function") {
    auto p = ex::example2(0.5);
    auto gamma = ex::example2_gamma_tail();
    for (int k = 0; k < 10; ++k) {
        Complex z(0.4 * k - 2.0, 0.3 + 0.25 * k);
        Complex composed = weyl_m(p, 0.5, gamma, z);
        Complex direct = ex::example2_ms(z);
        CHECK(std::abs(composed - direct) < 1e-6 * std::abs(direct));
    }
}

TEST_CASE("Green's function is symmetric and solves the resolvent identity") {
    SLProblem p(1.0, 0.9, Potential::step({0.0, 0.5, 1.0}, {1.0, -2.0}));
    Complex z(0.7, 1.1);
    Complex g1 = greens_function(p, 1.0, 2.0, z, 0.3, 0.8);
    Complex g2 = greens_function(p, 1.0, 2.0, z, 0.8, 0.3);
    CHECK(std::abs(g1 - g2) < 1e-11 * (1 + std::abs(g1)));
}
