#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <variant>

#include "spectral/asymptotics.hpp"
#include "spectral/canonical.hpp"
#include "spectral/io.hpp"
#include "spectral/string.hpp"
#include "spectral/transfer.hpp"

namespace py = pybind11;
using namespace spectral;

namespace {

// Accept a float or the string "inf" on the python side.
BoundaryCoefficient to_gamma(const py::object& obj) {
    if (py::isinstance<py::str>(obj)) {
        auto s = obj.cast<std::string>();
        if (s == "inf" || s == "infinity") return Infinity{};
        throw std::invalid_argument("gamma: expected a float or \"inf\"");
    }
    double v = obj.cast<double>();
    if (std::isinf(v)) return Infinity{};
    return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "spectral measures, Weyl functions and transfer functions";

    py::class_<Potential>(m, "Potential")
        .def_static("constant", &Potential::constant, py::arg("value"))
        .def_static("from_callable",
                    [](std::function<double(double)> f, std::vector<double> breakpoints) {
                        return Potential::expression(std::move(f), "", std::move(breakpoints));
                    },
                    py::arg("f"), py::arg("breakpoints") = std::vector<double>{})
        .def_static("step", &Potential::step, py::arg("edges"), py::arg("values"))
        .def("__call__", &Potential::operator(), py::arg("x"));

    py::class_<SLProblem>(m, "SLProblem")
        .def(py::init<double, double, Potential>(), py::arg("ell"), py::arg("alpha"),
             py::arg("q"))
        .def_readonly("ell", &SLProblem::ell)
        .def_readonly("alpha", &SLProblem::alpha)
        .def("h", &SLProblem::h)
        .def("to_json", [](const SLProblem& p) { return io::to_json(p); })
        .def_static("from_json", &io::sl_problem_from_json, py::arg("text"));

    py::class_<FundamentalValues>(m, "FundamentalValues")
        .def_readonly("phi", &FundamentalValues::phi)
        .def_readonly("phi_prime", &FundamentalValues::phi_prime)
        .def_readonly("psi", &FundamentalValues::psi)
        .def_readonly("psi_prime", &FundamentalValues::psi_prime)
        .def("wronskian", &FundamentalValues::wronskian);

    py::class_<SpectralMeasure, std::shared_ptr<SpectralMeasure>>(m, "SpectralMeasure")
        .def("atoms",
             [](const SpectralMeasure& mu) {
                 std::vector<std::pair<double, double>> out;
                 for (const auto& a : mu.atoms()) out.emplace_back(a.location, a.weight);
                 return out;
             })
        .def("stieltjes", [](const SpectralMeasure& mu, Complex z) { return mu.stieltjes(z); },
             py::arg("z"))
        .def("to_json", [](const SpectralMeasure& mu) { return io::to_json(mu); })
        .def_static("from_json",
                    [](const std::string& text) {
                        return std::make_shared<SpectralMeasure>(io::measure_from_json(text));
                    },
                    py::arg("text"));

    py::class_<TransferFunction>(m, "TransferFunction")
        .def("__call__", &TransferFunction::evaluate_real, py::arg("t"))
        .def("evaluate", &TransferFunction::evaluate, py::arg("t"))
        .def_readonly("grid", &TransferFunction::grid)
        .def_readonly("domain_bound", &TransferFunction::domain_bound);

    py::class_<ScrewFunction>(m, "ScrewFunction")
        .def("__call__", &ScrewFunction::evaluate, py::arg("t"))
        .def_readonly("grid", &ScrewFunction::grid)
        .def_readonly("beta", &ScrewFunction::beta);

    py::class_<CompareResult>(m, "CompareResult")
        .def_readonly("max_abs_deviation", &CompareResult::max_abs_deviation)
        .def_readonly("locally_identical", &CompareResult::locally_identical);

    py::class_<PsdVerdict>(m, "PsdVerdict")
        .def_readonly("min_eigenvalue", &PsdVerdict::min_eigenvalue)
        .def_readonly("is_psd", &PsdVerdict::is_psd);

    py::class_<Hamiltonian>(m, "Hamiltonian")
        .def("to_json", [](const Hamiltonian& h) { return io::to_json(h); })
        .def_static("from_json", &io::hamiltonian_from_json, py::arg("text"));

    py::class_<MassDistribution>(m, "MassDistribution")
        .def_static("homogeneous", &MassDistribution::homogeneous, py::arg("ell"),
                    py::arg("density") = 1.0)
        .def("total_mass", &MassDistribution::total_mass)
        .def("to_json", [](const MassDistribution& s) { return io::to_json(s); })
        .def_static("from_json", &io::string_from_json, py::arg("text"));

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("c_hat", &DecayFit::c_hat)
        .def_readonly("a_hat", &DecayFit::a_hat)
        .def_readonly("r2", &DecayFit::r2)
        .def_readonly("used", &DecayFit::used)
        .def_readonly("indistinguishable", &DecayFit::indistinguishable)
        .def_readonly("a_lower_bound", &DecayFit::a_lower_bound);

    m.def("solve_fundamental",
          [](const SLProblem& p, Complex z, double x) { return solve_fundamental(p, z, x); },
          py::arg("problem"), py::arg("z"), py::arg("x"));

    m.def("weyl_m",
          [](const SLProblem& p, double a, const py::object& gamma, Complex z) {
              return weyl_m(p, a, to_gamma(gamma), z);
          },
          py::arg("problem"), py::arg("a"), py::arg("gamma"), py::arg("z"));

    m.def("orthogonal_measure",
          [](const SLProblem& p, double a, const py::object& gamma, std::size_t count) {
              return std::make_shared<SpectralMeasure>(
                  orthogonal_measure(p, a, to_gamma(gamma), count));
          },
          py::arg("problem"), py::arg("a"), py::arg("gamma"), py::arg("count"));

    m.def("phi_from_measure",
          [](const std::shared_ptr<SpectralMeasure>& mu, const std::vector<double>& grid) {
              return phi_from_measure(mu, grid);
          },
          py::arg("measure"), py::arg("t_grid"));

    m.def("compare_transfer", &compare_transfer, py::arg("phi1"), py::arg("phi2"), py::arg("a"),
          py::arg("tol"));

    m.def("krein_kernel_psd",
          [](const TransferFunction& phi, const std::vector<double>& s_grid) {
              return psd_verdict(krein_kernel_matrix(phi, s_grid));
          },
          py::arg("phi"), py::arg("s_grid"));

    m.def("canonical_spectral_measure",
          [](const Hamiltonian& h, const py::object& gamma, std::size_t count) {
              return std::make_shared<SpectralMeasure>(
                  canonical_spectral_measure(h, to_gamma(gamma), count));
          },
          py::arg("hamiltonian"), py::arg("gamma"), py::arg("count"));

    m.def("screw_from_measure",
          [](const std::shared_ptr<SpectralMeasure>& mu, double beta,
             const std::vector<double>& grid) { return screw_from_measure(mu, beta, grid); },
          py::arg("measure"), py::arg("beta"), py::arg("t_grid"));

    m.def("string_spectral_measure",
          [](const MassDistribution& s, const py::object& gamma, std::size_t count) {
              return std::make_shared<SpectralMeasure>(
                  string_spectral_measure(s, to_gamma(gamma), count));
          },
          py::arg("string"), py::arg("gamma"), py::arg("count"));

    m.def("string_transfer",
          [](const std::shared_ptr<SpectralMeasure>& mu, const std::vector<double>& grid,
             bool cosine) { return string_transfer(mu, grid, cosine); },
          py::arg("measure"), py::arg("t_grid"), py::arg("cosine_variant") = false);

    m.def("decay_fit",
          [](const SLProblem& p1, const SLProblem& p2, const py::object& gamma, double angle,
             double r0, double r1, std::size_t n) {
              auto g = to_gamma(gamma);
              RaySampling ray(angle, logspace(r0, r1, n));
              return decay_fit(scaled_weyl_handle(p1, g), scaled_weyl_handle(p2, g), ray,
                               weyl_difference_handle(p1, p2, g));
          },
          py::arg("problem1"), py::arg("problem2"), py::arg("gamma"),
          py::arg("angle") = kPi / 2, py::arg("r0") = 1e2, py::arg("r1") = 1e6,
          py::arg("n") = 24);
}
