#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "spectral/io.hpp"
#include "spectral/string.hpp"

using namespace spectral;

TEST_CASE("SL problem JSON round trip preserves the potential") {
    SLProblem p(1.5, 0.8, Potential::step({0.0, 0.5, 1.5}, {2.0, -1.0}));
    auto q = io::sl_problem_from_json(io::to_json(p));
    CHECK(q.ell == doctest::Approx(1.5));
    CHECK(q.alpha == doctest::Approx(0.8));
    CHECK(q.q(0.25) == doctest::Approx(2.0));
    CHECK(q.q(1.0) == doctest::Approx(-1.0));
}

TEST_CASE("measure JSON round trip preserves atoms and tail") {
    TailDescriptor tail{kPi, -kPi / 2, 2, 2.0, 0.0, 5};
    SpectralMeasure mu({{1.0, 0.5}, {4.0, 2.0}}, {}, tail);
    auto nu = io::measure_from_json(io::to_json(mu));
    REQUIRE(nu.atoms().size() == 2);
    CHECK(nu.atoms()[1].location == doctest::Approx(4.0));
    REQUIRE(nu.tail().has_value());
    CHECK(nu.tail()->c == doctest::Approx(kPi));
    CHECK(nu.tail()->k_start == 5);
}

TEST_CASE("Hamiltonian and string JSON round trips") {
    Hamiltonian h(2.0, Potential::constant(0.5), Potential::constant(0.0),
                  Potential::constant(0.5));
    auto h2 = io::hamiltonian_from_json(io::to_json(h));
    CHECK(h2.ell == doctest::Approx(2.0));
    CHECK(h2.h11(1.0) == doctest::Approx(0.5));

    MassDistribution s(1.0, Potential::constant(1.0), {{0.5, 2.0}});
    auto s2 = io::string_from_json(io::to_json(s));
    CHECK(s2.ell() == doctest::Approx(1.0));
    REQUIRE(s2.atoms().size() == 1);
    CHECK(s2.atoms()[0].jump == doctest::Approx(2.0));
}

TEST_CASE("malformed JSON raises a diagnostic input error") {
    bool threw = false;
    try {
        (void)io::sl_problem_from_json("{\"ell\": 1,,}");
    } catch (const std::invalid_argument& e) {
        threw = true;
        CHECK(std::string(e.what()).find("malformed JSON") != std::string::npos);
    }
    CHECK(threw);
    CHECK_THROWS_AS((void)io::measure_from_json("{\"atoms\": 3}"), std::invalid_argument);
}

TEST_CASE("CSV output is deterministic and carries 17 significant digits") {
    std::vector<std::string> header{"t", "v"};
    std::vector<std::vector<double>> cols{{0.0, 1.0 / 3.0}, {1e-300, 5.0}};
    const char* path1 = "io_test_a.csv";
    const char* path2 = "io_test_b.csv";
    io::write_csv(path1, header, cols);
    io::write_csv(path2, header, cols);
    auto a = io::read_file(path1);
    auto b = io::read_file(path2);
    CHECK(a == b);
    CHECK(a.find("0.33333333333333331") != std::string::npos);
    CHECK(a.find("1e-300") != std::string::npos);
    CHECK(a.substr(0, a.find('\n')) == "t,v");
    std::remove(path1);
    std::remove(path2);
}

TEST_CASE("format_number keeps 17 significant digits") {
    CHECK(io::format_number(5.0) == "5");
    CHECK(io::format_number(0.1) == "0.10000000000000001");
    CHECK(io::format_number(1.0 / 3.0) == "0.33333333333333331");
}
