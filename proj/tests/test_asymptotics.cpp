#include <doctest.h>

#include <cmath>
#include <complex>

#include "spectral/asymptotics.hpp"
#include "spectral/examples.hpp"

using namespace spectral;
namespace ex = spectral::examples;

TEST_CASE("phi growth: normalized ratios tend to one along non-real rays") {
    SLProblem p(1.0, kPi / 2, Potential::constant(0.0));
    auto ray = RaySampling::standard();
    auto ratios = phi_growth_check(p, 1.0, ray);
    CHECK(std::abs(ratios.front() - Complex(1, 0)) < 1e-4);
    CHECK(std::abs(ratios.back() - Complex(1, 0)) < 1e-9);

    SLProblem p2(1.0, kPi / 4, Potential::constant(1.0));
    auto ratios2 = phi_growth_check(p2, 0.7, RaySampling::standard(kPi / 3));
    CHECK(std::abs(ratios2.back() - Complex(1, 0)) < 1e-2);
}

TEST_CASE("nevanlinna growth: m(z) = z passes, m(z) = z^2 fails") {
    auto ray = RaySampling::standard();
    auto ok = nevanlinna_growth_check([](Complex z) { return z; }, ray);
    CHECK(ok.bounded);
    auto bad = nevanlinna_growth_check([](Complex z) { return z * z; }, ray);
    CHECK_FALSE(bad.bounded);
    auto m1 = nevanlinna_growth_check(
        [](Complex z) { return ex::example1_m(Infinity{}, z); }, ray);
    CHECK(m1.bounded);
}

TEST_CASE("decay fit recovers the agreement radius of step-potential pairs") {
    SLProblem base(1.0, kPi / 2, Potential::constant(0.0));
    for (double a : {0.25, 0.5, 0.75}) {
        SLProblem other(1.0, kPi / 2, Potential::step({0.0, a, 1.0}, {0.0, 4.0}));
        auto fit = decay_fit(scaled_weyl_handle(base, Infinity{}),
                             scaled_weyl_handle(other, Infinity{}), RaySampling::standard(),
                             weyl_difference_handle(base, other, Infinity{}));
        CHECK(std::abs(fit.a_hat - a) < 0.1 * a);
        CHECK(fit.r2 > 0.999);
    }
}

TEST_CASE("decay fit is invariant under the boundary coefficient within 5 percent") {
    SLProblem base(1.0, kPi / 2, Potential::constant(0.0));
    SLProblem other(1.0, kPi / 2, Potential::step({0.0, 0.5, 1.0}, {0.0, 4.0}));
    double a_inf = decay_fit(scaled_weyl_handle(base, Infinity{}),
                             scaled_weyl_handle(other, Infinity{}), RaySampling::standard(),
                             weyl_difference_handle(base, other, Infinity{}))
                       .a_hat;
    double a_zero = decay_fit(scaled_weyl_handle(base, 0.0), scaled_weyl_handle(other, 0.0),
                              RaySampling::standard(),
                              weyl_difference_handle(base, other, 0.0))
                        .a_hat;
    CHECK(std::abs(a_inf - a_zero) < 0.05 * std::max(a_inf, a_zero));
}

TEST_CASE("identical problems report indistinguishable with a lower bound") {
    SLProblem p(1.0, kPi / 2, Potential::constant(2.0));
    auto fit = decay_fit(scaled_weyl_handle(p, Infinity{}), scaled_weyl_handle(p, Infinity{}),
                         RaySampling::standard(), weyl_difference_handle(p, p, Infinity{}));
    CHECK(fit.indistinguishable);
    CHECK(fit.a_lower_bound > 0.3);
}

TEST_CASE("ray sampling validates its construction") {
    CHECK_THROWS_AS(RaySampling(0.0, {1.0, 2.0, 3.0, 4.0}), std::invalid_argument);
    CHECK_THROWS_AS(RaySampling(1.0, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(RaySampling(1.0, {1.0, 3.0, 2.0, 4.0}), std::invalid_argument);
}
