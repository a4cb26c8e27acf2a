#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spectral/measure.hpp"

using namespace spectral;

TEST_CASE("stieltjes transform of a single atom") {
    SpectralMeasure mu({{4.0, 3.0}});
    Complex z(1.0, 2.0);
    Complex expected = 3.0 / (4.0 - z);
    CHECK(std::abs(mu.stieltjes(z) - expected) < 1e-15);
}

TEST_CASE("stieltjes transforms are Herglotz for random atomic measures") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> loc(-10.0, 50.0), w(0.01, 2.0), re(-5.0, 5.0),
        im(0.1, 10.0);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Atom> atoms;
        for (int k = 0; k < 30; ++k) atoms.push_back({loc(rng), w(rng)});
        std::sort(atoms.begin(), atoms.end(),
                  [](const Atom& a, const Atom& b) { return a.location < b.location; });
        SpectralMeasure mu(atoms);
        for (int j = 0; j < 5; ++j) {
            Complex z(re(rng), im(rng));
            CHECK(mu.stieltjes(z).imag() > 0);
            CHECK(std::abs(mu.stieltjes(std::conj(z)) - std::conj(mu.stieltjes(z))) < 1e-13);
        }
    }
}

TEST_CASE("kernel values match their definitions") {
    double lambda = 2.7, t = 1.3;
    CHECK(kernel_value(Kernel::SlTransfer, lambda, t).real() ==
          doctest::Approx((1 - std::cos(std::sqrt(lambda) * t)) / lambda).epsilon(1e-14));
    CHECK(kernel_value(Kernel::CosineTransfer, lambda, t).real() ==
          doctest::Approx(std::cos(std::sqrt(lambda) * t)).epsilon(1e-14));
    // SlTransfer is entire: at lambda = 0 the kernel is t^2/2.
    CHECK(kernel_value(Kernel::SlTransfer, 0.0, t).real() ==
          doctest::Approx(t * t / 2).epsilon(1e-10));
    // Negative lambda turns the cosine into a hyperbolic cosine.
    CHECK(kernel_value(Kernel::CosineTransfer, -4.0, 1.0).real() ==
          doctest::Approx(std::cosh(2.0)).epsilon(1e-12));
}

TEST_CASE("synthetic tail atoms reproduce the descriptor law") {
    TailDescriptor tail{/*c=*/3.0, /*d=*/0.5, /*p=*/2, /*w=*/2.0, /*q=*/0.0, /*k_start=*/4};
    auto atoms = synthetic_tail_atoms(tail, 10);
    REQUIRE(atoms.size() == 10);
    CHECK(atoms[0].location == doctest::Approx(std::pow(3.0 * 4 + 0.5, 2)).epsilon(1e-14));
    CHECK(atoms[0].weight == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(atoms[9].location == doctest::Approx(std::pow(3.0 * 13 + 0.5, 2)).epsilon(1e-14));
}

TEST_CASE("tail compensation: truncated measure plus tail matches a longer truncation") {
    // lambda_k = ((2k-1) pi/2)^2, weight 2: Neumann measure of the free problem.
    auto make_atoms = [](long n) {
        std::vector<Atom> atoms;
        for (long k = 1; k <= n; ++k) {
            double r = (2 * k - 1) * kPi / 2;
            atoms.push_back({r * r, 2.0});
        }
        return atoms;
    };
    TailDescriptor tail{kPi, -kPi / 2, 2, 2.0, 0.0, 201};
    SpectralMeasure short_mu(make_atoms(200), {}, tail);
    SpectralMeasure long_mu(make_atoms(40000));
    for (double t : {0.3, 0.9, 1.7}) {
        Complex a = short_mu.integrate_kernel(Kernel::SlTransfer, t);
        Complex b = long_mu.integrate_kernel(Kernel::SlTransfer, t);
        CHECK(std::abs(a - b) < 2e-4);
        CHECK(std::abs(a.real() - t) < 2e-4);  // Phi(t) = t on [0, 2]
    }
}

TEST_CASE("stieltjes inversion recovers the mass of an interval") {
    SpectralMeasure mu({{1.0, 0.5}, {2.0, 1.5}, {10.0, 3.0}});
    auto m = [&](Complex z) { return mu.stieltjes(z); };
    auto res = stieltjes_invert(m, 0.5, 4.0, {1e-2, 1e-3, 1e-4, 1e-5});
    CHECK(std::abs(res.mass - 2.0) < 1e-4);
    auto res2 = stieltjes_invert(m, 4.0, 20.0, {1e-2, 1e-3, 1e-4, 1e-5});
    CHECK(std::abs(res2.mass - 3.0) < 1e-4);
}

TEST_CASE("nevanlinna moment and interval mass of the stored part") {
    SpectralMeasure mu({{0.0, 1.0}, {3.0, 2.0}});
    CHECK(mu.nevanlinna_moment() == doctest::Approx(1.0 + 2.0 / 10.0).epsilon(1e-14));
    CHECK(mu.mass(-1.0, 1.0) == doctest::Approx(1.0));
    CHECK(mu.total_stored_mass() == doctest::Approx(3.0));
    CHECK(mu.supported_nonneg());
    CHECK(mu.min_support() == doctest::Approx(0.0));
}
