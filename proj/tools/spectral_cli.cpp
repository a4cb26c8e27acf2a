#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "spectral/asymptotics.hpp"
#include "spectral/canonical.hpp"
#include "spectral/examples.hpp"
#include "spectral/io.hpp"
#include "spectral/string.hpp"
#include "spectral/transfer.hpp"

using namespace spectral;

namespace {

BoundaryCoefficient parse_gamma(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return Infinity{};
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("gamma: expected a real number or \"inf\", got \"" + text +
                                    "\"");
    }
}

std::vector<double> parse_grid(const std::string& spec) {
    double t0, t1;
    int n;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &t0, &t1, &n) != 3 || n < 2 || !(t1 > t0))
        throw std::invalid_argument("grid: expected t0:t1:n with n >= 2, got \"" + spec + "\"");
    return linspace(t0, t1, static_cast<std::size_t>(n));
}

RaySampling parse_ray(const std::string& spec) {
    double angle, r0, r1;
    int n;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf:%d", &angle, &r0, &r1, &n) != 4 || n < 4)
        throw std::invalid_argument("ray: expected angle:r0:r1:n with n >= 4, got \"" + spec +
                                    "\"");
    return RaySampling(angle, logspace(r0, r1, static_cast<std::size_t>(n)));
}

void write_or_print(const std::string& out, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns) {
    if (!out.empty()) {
        io::write_csv(out, header, columns);
        std::printf("wrote %s (%zu rows)\n", out.c_str(), columns.front().size());
        return;
    }
    for (std::size_t j = 0; j < header.size(); ++j)
        std::printf("%s%s", j ? "," : "", header[j].c_str());
    std::printf("\n");
    for (std::size_t i = 0; i < columns.front().size(); ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j)
            std::printf("%s%s", j ? "," : "", io::format_number(columns[j][i]).c_str());
        std::printf("\n");
    }
}

int emit_example(int id, const std::string& out) {
    namespace ex = spectral::examples;
    if (id == 1) {
        auto p = ex::example1();
        auto grid = linspace(0.0, 4.0, 201);
        std::vector<BoundaryCoefficient> gammas{0.0, 1.0, 2.0, Infinity{}};
        std::vector<std::vector<double>> cols{grid};
        double dev_on_02 = 0;
        std::vector<TransferFunction> phis;
        for (const auto& g : gammas) {
            auto mu = std::make_shared<SpectralMeasure>(orthogonal_measure(p, 1.0, g, 10000));
            phis.push_back(phi_from_measure(mu, grid));
        }
        for (const auto& phi : phis) {
            std::vector<double> col;
            for (double t : grid) col.push_back(phi.evaluate_real(t));
            for (double t : linspace(0.0, 2.0, 101))
                dev_on_02 = std::max(dev_on_02, std::abs(phi.evaluate_real(t) - t));
            cols.push_back(std::move(col));
        }
        write_or_print(out, {"t", "phi_0", "phi_1", "phi_2", "phi_inf"}, cols);
        std::printf("max deviation from Phi(t)=t on [0,2]: %.3e\n", dev_on_02);
        std::printf("phi_0(3) = %.6f (closed form 5), phi_inf(3) = %.6f (closed form 1)\n",
                    phis[0].evaluate_real(3.0), phis[3].evaluate_real(3.0));
        return 0;
    }
    if (id == 2) {
        auto p = ex::example2(0.5);
        auto grid = linspace(0.0, 2.0, 101);
        auto mus = std::make_shared<SpectralMeasure>(ex::example2_singular_measure(400));
        auto mu0 = std::make_shared<SpectralMeasure>(orthogonal_measure(p, 0.5, 0.0, 400));
        auto mui = std::make_shared<SpectralMeasure>(orthogonal_measure(p, 0.5, Infinity{}, 400));
        auto fs = phi_from_measure(mus, grid);
        auto f0 = phi_from_measure(mu0, grid);
        auto fi = phi_from_measure(mui, grid);
        std::vector<std::vector<double>> cols{grid, {}, {}, {}};
        for (double t : grid) {
            cols[1].push_back(fs.evaluate_real(t));
            cols[2].push_back(f0.evaluate_real(t));
            cols[3].push_back(fi.evaluate_real(t));
        }
        write_or_print(out, {"t", "phi_s", "phi_0", "phi_inf"}, cols);
        double dev = 0;
        for (double t : linspace(0.0, 1.0, 101)) {
            double a = fs.evaluate_real(t), b = f0.evaluate_real(t), c = fi.evaluate_real(t);
            dev = std::max({dev, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
        }
        std::printf("max pairwise deviation of phi_s, phi_0, phi_inf on [0,1]: %.3e\n", dev);
        double worst = 0;
        auto gt = ex::example2_gamma_tail();
        for (int k = 0; k < 10; ++k) {
            Complex z(0.3 * (k + 1) - 1.5, 0.4 + 0.3 * k);
            Complex diff = weyl_m(p, 0.5, gt, z) - ex::example2_ms(z);
            worst = std::max(worst, std::abs(diff) / std::abs(ex::example2_ms(z)));
        }
        std::printf("nested Weyl function vs m_s, max relative error at 10 z: %.3e\n", worst);
        return 0;
    }
    if (id == 3) {
        auto h = ex::example3();
        auto grid = linspace(-4.0, 4.0, 201);
        auto mui = std::make_shared<SpectralMeasure>(canonical_spectral_measure(h, Infinity{}, 600));
        auto gi = screw_from_measure(mui, 0.0, grid);
        auto mu0 = std::make_shared<SpectralMeasure>(canonical_spectral_measure(h, 0.0, 600));
        double lam0 = 0;
        for (const auto& a : mu0->atoms())
            if (a.location > -kPi / 2 + 1e-9 && a.location <= kPi / 2 + 1e-9) lam0 = a.location;
        auto g0 = screw_from_measure(mu0, example3_beta(lam0), grid);
        std::vector<std::vector<double>> cols{grid, {}, {}, {}, {}};
        double dev = 0;
        for (double t : grid) {
            Complex a = gi.evaluate(t), b = g0.evaluate(t);
            cols[1].push_back(a.real());
            cols[2].push_back(a.imag());
            cols[3].push_back(b.real());
            cols[4].push_back(b.imag());
            dev = std::max(dev, std::abs(a - ex::example3_ginf_closed(t)));
        }
        write_or_print(out, {"t", "re_g_inf", "im_g_inf", "re_g_0", "im_g_0"}, cols);
        std::printf("max deviation of g_inf from closed form on [-4,4]: %.3e\n", dev);
        return 0;
    }
    if (id == 4) {
        auto h = ex::example4();
        auto grid = linspace(0.0, 6.0, 151);
        auto mu = std::make_shared<SpectralMeasure>(canonical_spectral_measure(h, Infinity{}, 400));
        auto g = screw_from_measure(mu, 0.0, grid);
        std::vector<std::vector<double>> cols{grid, {}, {}};
        double dev = 0;
        for (double t : grid) {
            Complex v = g.evaluate(t);
            cols[1].push_back(v.real());
            cols[2].push_back(v.imag());
            dev = std::max(dev, std::abs(v - ex::example4_g_closed(t)));
        }
        write_or_print(out, {"t", "re_g", "im_g"}, cols);
        std::printf("max deviation of g from [t^2/2 - t] closed form on [0,6]: %.3e\n", dev);
        return 0;
    }
    if (id == 5) {
        auto h = ex::example5();
        auto grid = linspace(-4.0, 4.0, 201);
        auto mu = std::make_shared<SpectralMeasure>(canonical_spectral_measure(h, Infinity{}, 600));
        auto f = f_from_measure(mu, grid);
        std::vector<std::vector<double>> cols{grid, {}};
        double dev = 0;
        for (double t : grid) {
            double v = f.evaluate(t).real();
            cols[1].push_back(v);
            dev = std::max(dev, std::abs(v - ex::example5_f_closed(t)));
        }
        write_or_print(out, {"t", "f"}, cols);
        std::printf("max deviation of f from [1-|t|] closed form on [-4,4]: %.3e\n", dev);
        return 0;
    }
    throw std::invalid_argument("examples: id must be 1..5");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral-transfer: spectral measures, Weyl functions and transfer functions"};
    app.require_subcommand(1);

    std::string out, grid_spec = "0:2:101", ray_spec, gamma_text = "inf";
    double tol = 1e-2, a_param = 0;
    int count = 400, id = 1;
    bool assert_mode = false, cosine = false;
    std::string path1, path2;
    double zr = 0, zi = 1, x_eval = -1;
    double beta = 0;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--out", out, "output CSV path");
        c->add_option("--tol", tol, "tolerance override");
        c->add_flag("--assert", assert_mode, "turn verdicts into exit codes");
    };

    auto* solve = app.add_subcommand("sl-solve", "fundamental solutions of an SL problem");
    solve->add_option("problem", path1, "problem JSON")->required();
    solve->add_option("--zr", zr, "Re z");
    solve->add_option("--zi", zi, "Im z");
    solve->add_option("--x", x_eval, "evaluation point (default ell)");
    add_common(solve);

    auto* slm = app.add_subcommand("sl-measure", "orthogonal spectral measure");
    slm->add_option("problem", path1, "problem JSON")->required();
    slm->add_option("--gamma", gamma_text, "boundary coefficient (real or inf)");
    slm->add_option("--count", count, "number of atoms");
    slm->add_option("--a", a_param, "right endpoint (default ell)");
    add_common(slm);

    auto* tr = app.add_subcommand("transfer", "transfer function of a measure");
    tr->add_option("measure", path1, "measure JSON")->required();
    tr->add_option("--grid", grid_spec, "t0:t1:n");
    add_common(tr);

    auto* cmp = app.add_subcommand("compare", "local transfer-function comparison");
    cmp->add_option("problemA", path1, "problem JSON")->required();
    cmp->add_option("problemB", path2, "problem JSON")->required();
    cmp->add_option("--a", a_param, "agreement radius to test")->required();
    cmp->add_option("--gamma", gamma_text, "boundary coefficient");
    cmp->add_option("--count", count, "atoms per measure");
    add_common(cmp);

    auto* kc = app.add_subcommand("kernel-check", "positive definiteness of the Krein kernel");
    kc->add_option("measure", path1, "measure JSON")->required();
    kc->add_option("--grid", grid_spec, "t0:t1:n transfer grid");
    add_common(kc);

    auto* ct = app.add_subcommand("canonical-transfer", "screw function of a canonical system");
    ct->add_option("hamiltonian", path1, "Hamiltonian JSON")->required();
    ct->add_option("--gamma", gamma_text, "boundary coefficient");
    ct->add_option("--count", count, "atoms per side");
    ct->add_option("--grid", grid_spec, "t0:t1:n");
    ct->add_option("--beta", beta, "linear term beta");
    add_common(ct);

    auto* st = app.add_subcommand("string-transfer", "transfer function of a Krein string");
    st->add_option("string", path1, "string JSON")->required();
    st->add_option("--gamma", gamma_text, "Stieltjes boundary coefficient");
    st->add_option("--count", count, "number of atoms");
    st->add_option("--grid", grid_spec, "t0:t1:n");
    st->add_flag("--cosine", cosine, "emit the cosine variant f instead of g");
    add_common(st);

    auto* df = app.add_subcommand("decay-fit", "Weyl-difference decay along a non-real ray");
    df->add_option("problemA", path1, "problem JSON")->required();
    df->add_option("problemB", path2, "problem JSON")->required();
    df->add_option("--gamma", gamma_text, "boundary coefficient");
    df->add_option("--ray", ray_spec, "angle:r0:r1:n (default pi/2:1e2:1e6:24)");
    add_common(df);

    auto* exs = app.add_subcommand("examples", "reproduce the worked examples end to end");
    exs->add_option("--id", id, "example id 1..5")->required();
    add_common(exs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*solve) {
            auto p = io::sl_problem_from_json(io::read_file(path1));
            double x = x_eval >= 0 ? x_eval : p.ell;
            auto f = solve_fundamental(p, Complex(zr, zi), x);
            std::printf("phi   = %s + %s i\nphi'  = %s + %s i\npsi   = %s + %s i\npsi'  = %s + %s i\n",
                        io::format_number(f.phi.real()).c_str(),
                        io::format_number(f.phi.imag()).c_str(),
                        io::format_number(f.phi_prime.real()).c_str(),
                        io::format_number(f.phi_prime.imag()).c_str(),
                        io::format_number(f.psi.real()).c_str(),
                        io::format_number(f.psi.imag()).c_str(),
                        io::format_number(f.psi_prime.real()).c_str(),
                        io::format_number(f.psi_prime.imag()).c_str());
            return 0;
        }
        if (*slm) {
            auto p = io::sl_problem_from_json(io::read_file(path1));
            double a = a_param > 0 ? a_param : p.ell;
            auto mu = orthogonal_measure(p, a, parse_gamma(gamma_text),
                                         static_cast<std::size_t>(count));
            std::string text = io::to_json(mu);
            if (out.empty()) {
                std::printf("%s\n", text.c_str());
            } else {
                std::ofstream file(out, std::ios::binary);
                file << text;
                std::printf("wrote %s (%zu atoms)\n", out.c_str(), mu.atoms().size());
            }
            return 0;
        }
        if (*tr) {
            auto mu = std::make_shared<SpectralMeasure>(io::measure_from_json(io::read_file(path1)));
            auto grid = parse_grid(grid_spec);
            auto phi = phi_from_measure(mu, grid);
            std::vector<std::vector<double>> cols{grid, {}};
            for (double t : grid) cols[1].push_back(phi.evaluate_real(t));
            write_or_print(out, {"t", "phi"}, cols);
            return 0;
        }
        if (*cmp) {
            auto pa = io::sl_problem_from_json(io::read_file(path1));
            auto pb = io::sl_problem_from_json(io::read_file(path2));
            auto gamma = parse_gamma(gamma_text);
            auto n = static_cast<std::size_t>(count);
            auto mua = std::make_shared<SpectralMeasure>(orthogonal_measure(pa, pa.ell, gamma, n));
            auto mub = std::make_shared<SpectralMeasure>(orthogonal_measure(pb, pb.ell, gamma, n));
            auto grid = linspace(0.0, 2 * a_param, 201);
            auto fa = phi_from_measure(mua, grid);
            auto fb = phi_from_measure(mub, grid);
            auto res = compare_transfer(fa, fb, a_param, tol);
            std::printf("%s on [0,%s] within %.3e (tolerance %.1e)\n",
                        res.locally_identical ? "agree" : "DIFFER",
                        io::format_number(2 * a_param).c_str(), res.max_abs_deviation, tol);
            return (assert_mode && !res.locally_identical) ? 1 : 0;
        }
        if (*kc) {
            auto mu = std::make_shared<SpectralMeasure>(io::measure_from_json(io::read_file(path1)));
            auto grid = parse_grid(grid_spec);
            auto phi = phi_from_measure(mu, grid);
            auto s_grid = linspace(0.0, grid.back() / 2, 50);
            auto verdict = psd_verdict(krein_kernel_matrix(phi, s_grid));
            std::printf("Krein kernel minimum eigenvalue: %.6e -> %s\n", verdict.min_eigenvalue,
                        verdict.is_psd ? "positive semidefinite" : "NOT psd");
            return (assert_mode && !verdict.is_psd) ? 1 : 0;
        }
        if (*ct) {
            auto h = io::hamiltonian_from_json(io::read_file(path1));
            auto mu = std::make_shared<SpectralMeasure>(canonical_spectral_measure(
                h, parse_gamma(gamma_text), static_cast<std::size_t>(count)));
            auto grid = parse_grid(grid_spec);
            auto g = screw_from_measure(mu, beta, grid);
            std::vector<std::vector<double>> cols{grid, {}, {}};
            for (double t : grid) {
                Complex v = g.evaluate(t);
                cols[1].push_back(v.real());
                cols[2].push_back(v.imag());
            }
            write_or_print(out, {"t", "re_g", "im_g"}, cols);
            return 0;
        }
        if (*st) {
            auto s = io::string_from_json(io::read_file(path1));
            auto mu = std::make_shared<SpectralMeasure>(string_spectral_measure(
                s, parse_gamma(gamma_text), static_cast<std::size_t>(count)));
            auto grid = parse_grid(grid_spec);
            auto g = string_transfer(mu, grid, cosine);
            std::vector<std::vector<double>> cols{grid, {}};
            for (double t : grid) cols[1].push_back(g.evaluate_real(t));
            write_or_print(out, {"t", cosine ? "f" : "g"}, cols);
            return 0;
        }
        if (*df) {
            auto pa = io::sl_problem_from_json(io::read_file(path1));
            auto pb = io::sl_problem_from_json(io::read_file(path2));
            auto gamma = parse_gamma(gamma_text);
            auto ray = ray_spec.empty() ? RaySampling::standard() : parse_ray(ray_spec);
            auto fit = decay_fit(scaled_weyl_handle(pa, gamma), scaled_weyl_handle(pb, gamma),
                                 ray, weyl_difference_handle(pa, pb, gamma));
            if (fit.indistinguishable) {
                std::printf("indistinguishable to machine precision; a >= %.4f "
                            "(bounded by the last resolvable radius)\n",
                            fit.a_lower_bound);
                return 0;
            }
            std::printf("c_hat = %.6f, a_hat = %.6f, log C = %.4f, r^2 = %.8f "
                        "(%zu points used, %zu clipped)\n",
                        fit.c_hat, fit.a_hat, fit.log_C_hat, fit.r2, fit.used, fit.clipped);
            if (!out.empty())
                io::write_csv(out, {"radius", "log_diff", "fitted"},
                              {fit.used_radii, fit.log_diff, fit.fitted});
            return 0;
        }
        if (*exs) return emit_example(id, out);
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical tolerance failure: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
