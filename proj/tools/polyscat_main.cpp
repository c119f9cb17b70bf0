#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "polyscat/constants.hpp"
#include "polyscat/dispersion.hpp"
#include "polyscat/sweep.hpp"
#include "polyscat/verify.hpp"

namespace {

using namespace polyscat;

std::string join_args(int argc, char** argv) {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) {
        os << (i ? " " : "") << argv[i];
    }
    return os.str();
}

// Shared scenario flags for sweep/convert.
struct ScenarioArgs {
    double u0_ev = 0;
    double width_m = 0;
    double mass_kg = default_constants().electron_mass_kg;
    int n = 0;
    std::string constants_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--u0-ev", u0_ev, "barrier height U0 in eV")->required();
        cmd->add_option("--width-m", width_m, "barrier width L in meters")->required();
        cmd->add_option("--mass-kg", mass_kg, "particle mass in kg (default: electron)");
        cmd->add_option("--n", n, "lattice sites across the barrier width")->required();
        cmd->add_option("--constants", constants_path,
                        "JSON file overriding hbar_js / electron_mass_kg / ev_joule");
    }

    PhysicalScenario scenario() const {
        PhysicalScenario sc;
        sc.constants = constants_path.empty() ? default_constants()
                                              : load_constants(constants_path);
        sc.mass_kg = mass_kg;
        sc.barrier_height_ev = u0_ev;
        sc.barrier_width_m = width_m;
        sc.n = n;
        sc.validate();
        return sc;
    }
};

int write_output(const std::string& out_path,
                 const std::function<void(std::ostream&)>& writer) {
    if (out_path.empty()) {
        writer(std::cout);
        return 0;
    }
    std::ofstream file(out_path);
    if (!file) {
        std::cerr << "error: cannot open output file " << out_path << "\n";
        return 1;
    }
    writer(file);
    return 0;
}

void print_verify_table(std::ostream& os, const VerifyReport& r) {
    for (const CheckResult& c : r.checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  measured "
           << format_double(c.measured) << "  tolerance "
           << format_double(c.tolerance);
        if (!c.detail.empty()) {
            os << "  [" << c.detail << "]";
        }
        os << "\n";
    }
    os << (r.all_pass ? "all checks passed" : "CHECKS FAILED") << " in "
       << format_double(r.total_seconds) << " s"
       << (r.quick ? " (quick grids)" : "") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyscat: tunneling observables for lattice (polymer) and "
                 "continuum quantum mechanics"};
    app.require_subcommand(1);
    const std::string command_line = join_args(argc, argv);

    // --- sweep ---
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "energy sweep of transmission, phase, and Wigner time");
    ScenarioArgs sweep_sc;
    sweep_sc.attach(sweep_cmd);
    int gap_sites = 0;
    int barriers = 1;
    double emin = 0.01, emax = 0.99;
    int steps = 400;
    std::string format = "csv";
    std::string out_path;
    bool seconds = false;
    bool no_reflection = false;
    int threads = 1;
    std::string abscissa = "ehat";
    sweep_cmd->add_option("--gap-sites", gap_sites,
                          "gap parameter m between barriers (default: n)");
    sweep_cmd->add_option("--barriers", barriers, "number of barriers N (default 1)");
    sweep_cmd->add_option("--emin", emin, "grid start (E/U0 by default)");
    sweep_cmd->add_option("--emax", emax, "grid end (E/U0 by default)");
    sweep_cmd->add_option("--steps", steps, "number of grid points");
    sweep_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", out_path, "output path (default stdout)");
    sweep_cmd->add_flag("--seconds", seconds, "also report times in seconds");
    sweep_cmd->add_flag("--no-reflection", no_reflection,
                        "skip the lattice solve for |R|^2");
    sweep_cmd->add_option("--threads", threads, "worker threads (default 1)");
    sweep_cmd->add_option("--abscissa", abscissa,
                          "grid unit: ehat (E/U0) or epsilon (lattice energy)")
        ->check(CLI::IsMember({"ehat", "epsilon"}));

    // --- figure ---
    auto* figure_cmd = app.add_subcommand(
        "figure", "preset multi-curve datasets (fig1..fig4)");
    std::string figure_name;
    int figure_steps = 400;
    std::string figure_format = "csv";
    std::string figure_out;
    figure_cmd->add_option("name", figure_name, "fig1 | fig2 | fig3 | fig4")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
    figure_cmd->add_option("--steps", figure_steps, "grid points per curve");
    figure_cmd->add_option("--format", figure_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    figure_cmd->add_option("--out", figure_out, "output path (default stdout)");

    // --- verify ---
    auto* verify_cmd = app.add_subcommand(
        "verify", "cross-validate closed forms against direct lattice solves");
    bool quick = false;
    std::string endpoints = "half";
    std::string verify_format = "table";
    std::string verify_out;
    verify_cmd->add_flag("--quick", quick, "smaller grids (~10x faster)");
    verify_cmd->add_option("--endpoints", endpoints,
                           "barrier endpoint convention: half (correct) or "
                           "full (negative control, must fail)")
        ->check(CLI::IsMember({"half", "full"}));
    verify_cmd->add_option("--format", verify_format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
    verify_cmd->add_option("--out", verify_out, "output path (default stdout)");

    // --- convert ---
    auto* convert_cmd = app.add_subcommand(
        "convert", "unit conversions for a scenario (eV <-> eps, seconds <-> tau)");
    ScenarioArgs convert_sc;
    convert_sc.attach(convert_cmd);
    double in_ev = 0, in_ehat = 0, in_eps = 0, in_tau = 0, in_time_s = 0;
    auto* opt_ev = convert_cmd->add_option("--ev", in_ev, "energy in eV");
    auto* opt_ehat = convert_cmd->add_option("--epsilon-hat", in_ehat, "energy as E/U0");
    auto* opt_eps = convert_cmd->add_option("--epsilon", in_eps, "lattice energy");
    auto* opt_tau = convert_cmd->add_option("--tau", in_tau, "dimensionless time");
    auto* opt_time = convert_cmd->add_option("--time-s", in_time_s, "time in seconds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed()) {
            const PhysicalScenario sc = sweep_sc.scenario();
            if (gap_sites == 0) {
                gap_sites = barriers > 1 ? sc.n : 1;
            }
            EnergyGrid grid{emin, emax, steps};
            if (abscissa == "epsilon") {
                grid.e_min = emin / sc.upsilon0();
                grid.e_max = emax / sc.upsilon0();
            }
            SweepOptions opts;
            opts.threads = threads;
            opts.with_reflection = !no_reflection;
            const SweepResult result =
                (barriers > 1 || gap_sites > 1)
                    ? sweep_multi(sc, gap_sites, barriers, grid, opts)
                    : sweep_single(sc, grid, opts);
            WriteOptions wo{seconds, command_line};
            return write_output(out_path, [&](std::ostream& os) {
                if (format == "csv") {
                    write_csv(os, result, wo);
                } else {
                    write_json(os, result, wo);
                }
            });
        }

        if (figure_cmd->parsed()) {
            const FigureData fig = run_figure(figure_name, figure_steps);
            WriteOptions wo{false, command_line};
            return write_output(figure_out, [&](std::ostream& os) {
                if (figure_format == "csv") {
                    write_figure_csv(os, fig, wo);
                } else {
                    write_figure_json(os, fig, wo);
                }
            });
        }

        if (verify_cmd->parsed()) {
            const EdgeConvention edge = endpoints == "half"
                                            ? EdgeConvention::half_height
                                            : EdgeConvention::full_height;
            const VerifyReport report = run_verification(quick, edge);
            const int rc = write_output(verify_out, [&](std::ostream& os) {
                if (verify_format == "json") {
                    os << verify_report_json(report) << "\n";
                } else {
                    print_verify_table(os, report);
                }
            });
            return rc != 0 ? rc : (report.all_pass ? 0 : 1);
        }

        if (convert_cmd->parsed()) {
            const PhysicalScenario sc = convert_sc.scenario();
            const int given = static_cast<int>(opt_ev->count() > 0) +
                              static_cast<int>(opt_ehat->count() > 0) +
                              static_cast<int>(opt_eps->count() > 0) +
                              static_cast<int>(opt_tau->count() > 0) +
                              static_cast<int>(opt_time->count() > 0);
            if (given != 1) {
                std::cerr << "error: convert needs exactly one of --ev, "
                             "--epsilon-hat, --epsilon, --tau, --time-s\n";
                return 1;
            }
            std::ostream& os = std::cout;
            os << "alpha = " << format_double(sc.alpha()) << "\n"
               << "upsilon0 = " << format_double(sc.upsilon0()) << "\n"
               << "lattice_spacing_m = " << format_double(sc.lattice_spacing_m()) << "\n"
               << "time_unit_s = " << format_double(sc.time_unit_s()) << "\n"
               << "epsilon_hat_max = " << format_double(sc.epsilon_hat_max()) << "\n";
            if (opt_ev->count() > 0) {
                const double eh = in_ev / sc.barrier_height_ev;
                os << "epsilon_hat = " << format_double(eh) << "\n"
                   << "epsilon = " << format_double(sc.epsilon_of(eh)) << "\n";
            } else if (opt_ehat->count() > 0) {
                os << "energy_ev = " << format_double(in_ehat * sc.barrier_height_ev) << "\n"
                   << "epsilon = " << format_double(sc.epsilon_of(in_ehat)) << "\n";
            } else if (opt_eps->count() > 0) {
                const double eh = in_eps / sc.upsilon0();
                os << "epsilon_hat = " << format_double(eh) << "\n"
                   << "energy_ev = " << format_double(eh * sc.barrier_height_ev) << "\n";
            } else if (opt_tau->count() > 0) {
                os << "time_s = " << format_double(in_tau * sc.time_unit_s()) << "\n";
            } else {
                os << "tau = " << format_double(in_time_s / sc.time_unit_s()) << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
