#include <doctest.h>

#include <cmath>
#include <memory>

#include "spectral/examples.hpp"
#include "spectral/transfer.hpp"

using namespace spectral;
namespace ex = spectral::examples;

namespace {

std::shared_ptr<SpectralMeasure> measure1(const BoundaryCoefficient& gamma, std::size_t n) {
    return std::make_shared<SpectralMeasure>(orthogonal_measure(ex::example1(), 1.0, gamma, n));
}

}  // namespace

TEST_CASE("free problem: Phi equals t on [0, 2] for every gamma") {
    auto grid = linspace(0.0, 2.0, 81);
    for (BoundaryCoefficient gamma :
         {BoundaryCoefficient(0.0), BoundaryCoefficient(1.0), BoundaryCoefficient(Infinity{})}) {
        auto phi = phi_from_measure(measure1(gamma, 2000), grid);
        for (double t : grid) CHECK(std::abs(phi.evaluate_real(t) - t) < 5e-3);
    }
}

TEST_CASE("free problem: closed-form continuations past the common window") {
    auto grid = linspace(0.0, 4.0, 81);
    auto phi0 = phi_from_measure(measure1(0.0, 4000), grid);
    auto phii = phi_from_measure(measure1(Infinity{}, 4000), grid);
    CHECK(std::abs(phi0.evaluate_real(3.0) - 5.0) < 1e-2);
    CHECK(std::abs(phii.evaluate_real(3.0) - 1.0) < 1e-2);
    for (double t : grid) {
        CHECK(std::abs(phi0.evaluate_real(t) - ex::example1_phi0_closed(t)) < 1e-2);
        CHECK(std::abs(phii.evaluate_real(t) - ex::example1_phiinf_closed(t)) < 1e-2);
    }
}

TEST_CASE("Krein kernel is psd for measure-built Phi and rejects controls") {
    auto grid = linspace(0.0, 2.0, 81);
    auto phi = phi_from_measure(measure1(Infinity{}, 2000), grid);
    auto s_grid = linspace(0.0, 1.0, 50);
    auto ok = psd_verdict(krein_kernel_matrix(phi, s_grid));
    CHECK(ok.is_psd);

    std::vector<Complex> bad;
    auto bad_grid = linspace(0.0, 2.0, 81);
    for (double t : bad_grid) bad.emplace_back(-t * t, 0.0);
    auto control = transfer_from_samples(bad_grid, bad, 2.0, "control");
    auto fail = psd_verdict(krein_kernel_matrix(control, s_grid));
    CHECK_FALSE(fail.is_psd);
    CHECK(fail.min_eigenvalue < -1e-3);
}

TEST_CASE("compare_transfer separates equal and distinct transfer functions") {
    auto grid = linspace(0.0, 1.0, 41);
    auto a = phi_from_measure(measure1(0.0, 2000), grid);
    auto b = phi_from_measure(measure1(Infinity{}, 2000), grid);
    auto same = compare_transfer(a, b, 0.5, 1e-2);
    CHECK(same.locally_identical);  // both equal t on [0, 1]

    auto grid4 = linspace(0.0, 4.0, 81);
    auto a4 = phi_from_measure(measure1(0.0, 2000), grid4);
    auto b4 = phi_from_measure(measure1(Infinity{}, 2000), grid4);
    auto diff = compare_transfer(a4, b4, 1.9, 1e-2);
    CHECK_FALSE(diff.locally_identical);  // the branches diverge past t = 2
}

TEST_CASE("Laplace bridge: int e^{-yt} Phi dt against m(-y^2)/y") {
    auto grid = linspace(0.0, 4.0, 161);
    auto phi = phi_from_measure(measure1(Infinity{}, 4000), grid);
    auto m = [](Complex z) { return ex::example1_m(Infinity{}, z); };
    auto residuals = laplace_bridge_residual(phi, m, {5.0, 10.0, 20.0}, 4.0);
    for (double r : residuals) CHECK(r < 1e-5);
}

TEST_CASE("transfer evaluation is grid independent (provenance re-evaluation)") {
    auto coarse = phi_from_measure(measure1(1.0, 2000), linspace(0.0, 2.0, 11));
    auto fine = phi_from_measure(measure1(1.0, 2000), linspace(0.0, 2.0, 201));
    for (double t : {0.13, 0.77, 1.53})
        CHECK(std::abs(coarse.evaluate_real(t) - fine.evaluate_real(t)) < 1e-12);
}
