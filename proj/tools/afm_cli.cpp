// Command-line surface for the loop-expansion library: every table,
// coefficient list, identity check, and figure dataset as a reproducible
// file.  Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <afm/combinatorics.hpp>
#include <afm/fermion.hpp>
#include <afm/gamma.hpp>
#include <afm/laplace.hpp>
#include <afm/quadrature.hpp>
#include <afm/rational.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunConfig {
    std::string output_path; // empty: stdout (or $AFM_OUTPUT_DIR/<cmd>.csv)
    std::string format = "csv";
    int precision = 6;
};

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    if (out.empty()) throw CLI::ValidationError("empty numeric list");
    return out;
}

// The emitters all produce CSV; the alternative formats are pure
// re-renderings so every format stays byte-deterministic.
std::string render(const std::string& csv, const std::string& format) {
    if (format == "csv") return csv;
    std::string out;
    std::stringstream ss(csv);
    std::string line;
    bool first = true;
    while (std::getline(ss, line)) {
        if (format == "rational-text" && first) {
            first = false;
            continue; // headerless
        }
        for (char& c : line)
            if (c == ',') c = (format == "tsv") ? '\t' : ' ';
        out += line;
        out += '\n';
    }
    return out;
}

int write_output(const RunConfig& cfg, const std::string& command,
                 const std::string& body) {
    std::string path = cfg.output_path;
    if (path.empty()) {
        if (const char* dir = std::getenv("AFM_OUTPUT_DIR"))
            path = std::string(dir) + "/" + command + "." +
                   (cfg.format == "tsv" ? "tsv" : (cfg.format == "csv" ? "csv" : "txt"));
    }
    std::string rendered = render(body, cfg.format);
    if (path.empty()) {
        std::cout << rendered;
        return 0;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return 1;
    }
    os << rendered;
    if (!os.good()) {
        std::cerr << "error: write failed: " << path << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loop expansions of one-dimensional large-N integrals: "
                 "exact coefficient tables, Gamma/fermion model benchmarks, "
                 "and verification suites"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("-o,--output", cfg.output_path,
                   "Output file (default: stdout, or $AFM_OUTPUT_DIR/<command>.<ext>)");
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "tsv", "rational-text"}))
        ->capture_default_str();
    app.add_option("--precision", cfg.precision, "Significant digits for floats")
        ->check(CLI::Range(4, 17))
        ->capture_default_str();

    // ttable ------------------------------------------------------------
    auto* ttable = app.add_subcommand("ttable", "Exact coefficients T(L,k|2L-k)");
    int tt_lmax = 14;
    bool tt_norm = false, tt_force = false;
    ttable->add_option("--Lmax", tt_lmax, "Largest loop order")->capture_default_str();
    ttable->add_flag("--normalized", tt_norm,
                     "Divide by (2(L+k)-1)!! (the published normalization)");
    ttable->add_flag("--force", tt_force, "Allow Lmax beyond the default budget of 14");

    // stirling ----------------------------------------------------------
    auto* stirling = app.add_subcommand("stirling", "Stirling-series coefficients n(L)");
    int st_order = 14;
    stirling->add_option("--order", st_order, "Highest order L")->capture_default_str();

    // gamma-table -------------------------------------------------------
    auto* gtable = app.add_subcommand("gamma-table",
                                      "Gamma(N) loop approximations and ratios");
    std::string gt_nlist = "1,2,5,10";
    int gt_loops = 15;
    gtable->add_option("--N-list", gt_nlist, "Comma-separated N values")
        ->capture_default_str();
    gtable->add_option("--loops", gt_loops, "Highest loop order")->capture_default_str();

    // fermion-table -----------------------------------------------------
    auto* ftable = app.add_subcommand("fermion-table",
                                      "Fermion-model partition function table");
    std::string ft_method = "I";
    std::string ft_omega0 = "100,1,0.01";
    std::string ft_lambda = "0.001,0.01,0.1,1,10";
    int ft_loops = 3, ft_N = 2;
    double ft_omega = 1.0;
    ftable->add_option("--method", ft_method, "I: explicit prefactor; II: absorbed")
        ->check(CLI::IsMember({"I", "II"}))
        ->capture_default_str();
    ftable->add_option("--omega0", ft_omega0, "omega0 block values (comma-separated)")
        ->capture_default_str();
    ftable->add_option("--lambda-grid", ft_lambda, "lambda values")->capture_default_str();
    ftable->add_option("--loops", ft_loops, "Highest loop order")->capture_default_str();
    ftable->add_option("--N", ft_N, "Number of species")->capture_default_str();
    ftable->add_option("--omega", ft_omega, "omega")->capture_default_str();

    // ks-table ----------------------------------------------------------
    auto* kstable = app.add_subcommand("ks-table",
                                       "Degenerate-model table (prefactor == 1)");
    int ks_N = 3, ks_loops = 3;
    double ks_omega = 1.0;
    std::string ks_lambda = "0.001,0.01,0.1,1,10";
    kstable->add_option("--N", ks_N, "Number of species")->capture_default_str();
    kstable->add_option("--omega", ks_omega, "omega")->capture_default_str();
    kstable->add_option("--lambda-grid", ks_lambda,
                        "Base lambda values (multiplied by sqrt(3/2))")
        ->capture_default_str();
    kstable->add_option("--loops", ks_loops, "Highest loop order")->capture_default_str();

    // fig1 --------------------------------------------------------------
    auto* fig1 = app.add_subcommand("fig1", "Gamma ratio-versus-order dataset");
    std::string f1_nlist = "1,2,5,10";
    int f1_loops = 15;
    fig1->add_option("--N-list", f1_nlist, "Comma-separated N values")->capture_default_str();
    fig1->add_option("--loops", f1_loops, "Highest loop order")->capture_default_str();

    // fig2 --------------------------------------------------------------
    auto* fig2 = app.add_subcommand("fig2", "Third-saddle 3-loop term vs lambda");
    std::string f2_omega0 = "0.01,0.05,0.1";
    std::string f2_lambda;
    fig2->add_option("--omega0-list", f2_omega0, "omega0 values")->capture_default_str();
    fig2->add_option("--lambda-grid", f2_lambda,
                     "lambda values (default: 0.025 .. 1.0 in steps of 0.025)");

    // verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Run consistency checks");
    bool v_appb = false, v_equiv = false, v_oracle = false;
    int v_lmax = 10;
    verify->add_flag("--appendix-b", v_appb, "Exact conditional-sum identities");
    verify->add_flag("--method-equivalence", v_equiv,
                     "Explicit vs absorbed prefactor agreement");
    verify->add_flag("--oracle", v_oracle, "Quadrature against closed forms");
    verify->add_option("--Lmax", v_lmax, "Identity-suite depth")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // uniform usage-error code
    }

    try {
        std::ostringstream body;

        if (*ttable) {
            if (tt_lmax > 14 && !tt_force) {
                std::cerr << "error: --Lmax > 14 needs --force (runtime grows quickly)\n";
                return 2;
            }
            afm::emit_t_table(body, tt_lmax,
                              tt_norm ? afm::TTableColumns::normalized
                                      : afm::TTableColumns::raw);
            return write_output(cfg, "ttable", body.str());
        }
        if (*stirling) {
            body << "L,coefficient\n";
            auto coeffs = afm::stirling_coefficients(st_order);
            for (int L = 0; L <= st_order; ++L)
                body << L << ',' << coeffs[static_cast<std::size_t>(L)].str() << '\n';
            return write_output(cfg, "stirling", body.str());
        }
        if (*gtable) {
            afm::emit_gamma_table(body, parse_list(gt_nlist), gt_loops, cfg.precision);
            return write_output(cfg, "gamma-table", body.str());
        }
        if (*ftable) {
            afm::FermionTableOptions opt;
            opt.N = ft_N;
            opt.omega = ft_omega;
            opt.omega0_list = parse_list(ft_omega0);
            opt.lambda_grid = parse_list(ft_lambda);
            opt.loops = ft_loops;
            opt.absorbed_prefactor = (ft_method == "II");
            opt.precision = cfg.precision;
            afm::emit_fermion_table(body, opt);
            return write_output(cfg, "fermion-table", body.str());
        }
        if (*kstable) {
            afm::emit_ks_table(body, ks_N, ks_omega, parse_list(ks_lambda), ks_loops,
                               cfg.precision);
            return write_output(cfg, "ks-table", body.str());
        }
        if (*fig1) {
            afm::emit_gamma_figure(body, parse_list(f1_nlist), f1_loops, cfg.precision);
            return write_output(cfg, "fig1", body.str());
        }
        if (*fig2) {
            std::vector<double> grid;
            if (f2_lambda.empty())
                for (int i = 1; i <= 40; ++i) grid.push_back(0.025 * i);
            else
                grid = parse_list(f2_lambda);
            afm::emit_figure2(body, parse_list(f2_omega0), grid, cfg.precision);
            return write_output(cfg, "fig2", body.str());
        }
        if (*verify) {
            if (!v_appb && !v_equiv && !v_oracle)
                v_appb = v_equiv = v_oracle = true; // no selection: run everything
            bool ok = true;

            if (v_appb) {
                auto rep = afm::verify_sum_identities(v_lmax);
                std::cout << "identity suite (L <= " << v_lmax << "): "
                          << (rep.all_pass ? "pass" : "FAIL") << "\n";
                for (auto& f : rep.failures) std::cout << "  " << f << "\n";
                ok = ok && rep.all_pass;
            }
            if (v_equiv) {
                auto gr = afm::method2_gamma_check(4);
                std::cout << "gamma re-expansion check (L <= 4): "
                          << (gr.all_pass ? "pass" : "FAIL") << "\n";
                for (auto& f : gr.failures) std::cout << "  " << f << "\n";
                ok = ok && gr.all_pass;

                bool fermion_ok = true;
                for (double w0 : {1.0, 1e2})
                    for (double lam : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
                        afm::FermionParams p{2, 1.0, w0, lam};
                        double exact = afm::exact_partition(p);
                        for (int l = 0; l <= 3; ++l) {
                            double d = std::fabs(afm::method2_z(p, l) -
                                                 afm::method1_z(p, l));
                            if (d / std::fabs(exact) >= 1e-4) {
                                fermion_ok = false;
                                std::cout << "  fermion mismatch at omega0=" << w0
                                          << " lambda=" << lam << " l=" << l << "\n";
                            }
                        }
                    }
                std::cout << "fermion method equivalence (omega0 in {1, 100}): "
                          << (fermion_ok ? "pass" : "FAIL") << "\n";
                ok = ok && fermion_ok;
            }
            if (v_oracle) {
                bool q_ok = true;
                for (int N = 1; N <= 10; ++N) {
                    afm::Integrand ig{afm::IntegrandKind::gamma_form, double(N)};
                    double got = afm::integrate(ig, 1e-12).value * std::pow(N, N);
                    double want = afm::Rational(afm::factorial(N - 1)).to_double();
                    if (std::fabs(got - want) > 1e-10 * want) {
                        q_ok = false;
                        std::cout << "  Gamma(" << N << ") mismatch: " << got << "\n";
                    }
                }
                for (int N = 1; N <= 6; ++N)
                    for (double w0 : {1e-2, 1.0, 1e2})
                        for (double lam : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
                            afm::FermionParams p{N, 1.0, w0, lam};
                            afm::Integrand ig;
                            ig.kind = afm::IntegrandKind::fermion_form;
                            ig.N = N;
                            ig.omega = p.omega;
                            ig.omega0 = p.omega0;
                            ig.lambda = p.lambda;
                            double got = afm::integrate(ig, 1e-10).value *
                                         std::sqrt(N / (2.0 * M_PI));
                            double want = afm::exact_partition(p);
                            if (std::fabs(got - want) > 1e-8 * std::fabs(want)) {
                                q_ok = false;
                                std::cout << "  partition mismatch at N=" << N
                                          << " omega0=" << w0 << " lambda=" << lam
                                          << ": " << got << " vs " << want << "\n";
                            }
                        }
                std::cout << "quadrature oracle: " << (q_ok ? "pass" : "FAIL") << "\n";
                ok = ok && q_ok;
            }
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2; // unreachable: a subcommand is required
}
