#include "polyscat/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>

#include <json.hpp>

#include "polyscat/deriv.hpp"
#include "polyscat/qm_baseline.hpp"
#include "polyscat/single_barrier.hpp"
#include "polyscat/sweep.hpp"
#include "polyscat/transfer_matrix.hpp"

namespace polyscat {

const char* version_string() { return "0.1.0"; }

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        v[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * i / static_cast<double>(count - 1);
    }
    return v;
}

struct WorstCase {
    double value = 0;
    std::string where;

    void update(double v, const std::string& w) {
        if (v > value) {
            value = v;
            where = w;
        }
    }
};

std::string spot(double upsilon0, int n, double eps) {
    return "u0=" + format_double(upsilon0) + " n=" + std::to_string(n) +
           " eps=" + format_double(eps);
}

// Reference scenario: electron on a 10 eV, 1.8 Angstrom barrier.
PhysicalScenario electron_scenario(int n) {
    PhysicalScenario sc;
    sc.mass_kg = default_constants().electron_mass_kg;
    sc.barrier_height_ev = 10.0;
    sc.barrier_width_m = 1.8e-10;
    sc.n = n;
    return sc;
}

} // namespace

VerifyReport run_verification(bool quick, EdgeConvention edge) {
    const auto suite_start = clock_type::now();
    VerifyReport report;
    report.quick = quick;

    const std::vector<double> heights{0.5, 1.0, 2.0};
    const std::vector<int> widths{1, 2, 5, 20};
    const int single_energies = quick ? 12 : 50;
    const int multi_energies = quick ? 40 : 200;
    const std::vector<int> counts = quick ? std::vector<int>{2, 3}
                                          : std::vector<int>{2, 3, 5};

    WorstCase unitarity;
    WorstCase residual;

    // --- single barrier closed form vs direct lattice solve ---
    {
        const auto t0 = clock_type::now();
        WorstCase dev;
        for (double u0 : heights) {
            for (int n : widths) {
                const PotentialProfile profile = barrier_profile(u0, n, edge);
                const double lo = 0.02 * std::min(u0, band_top);
                const double hi = 0.98 * std::min(u0, band_top - band_edge_margin);
                for (double eps : linspace(lo, hi, single_energies)) {
                    const DispersionPair d = DispersionPair::at(eps, u0);
                    const OracleSolution sol = solve_scattering(profile, eps);
                    dev.update(std::abs(transmission_coefficient(d, n) -
                                        sol.transmission_coefficient()),
                               spot(u0, n, eps));
                    unitarity.update(std::abs(sol.transmission_coefficient() +
                                              sol.reflection_coefficient() - 1.0),
                                     spot(u0, n, eps));
                    residual.update(sol.residual, spot(u0, n, eps));
                }
            }
        }
        report.checks.push_back({"single_closed_vs_lattice", dev.where, dev.value,
                                 1e-10, dev.value <= 1e-10, seconds_since(t0)});
    }

    // --- multi barrier closed form vs direct lattice solve, and which
    //     train period the composed closed form corresponds to ---
    {
        const auto t0 = clock_type::now();
        const PhysicalScenario sc = electron_scenario(100);
        WorstCase dev_matched;
        WorstCase dev_alternative;
        for (int count : counts) {
            const BarrierSystem sys = sc.system(100, count);
            const PotentialProfile matched =
                barrier_train_profile(sys, matched_period(sys), edge);
            const PotentialProfile alt =
                barrier_train_profile(sys, matched_period(sys) + 1, edge);
            for (double eh : linspace(0.02, 0.98, multi_energies)) {
                const double eps = sys.upsilon0 * eh;
                const DispersionPair d = DispersionPair::at(eps, sys.upsilon0);
                const double t_closed = transmission_multi(d, sys);
                const OracleSolution sol = solve_scattering(matched, eps);
                const OracleSolution sol_alt = solve_scattering(alt, eps);
                const std::string tag =
                    "N=" + std::to_string(count) + " eh=" + format_double(eh);
                dev_matched.update(std::abs(t_closed - sol.transmission_coefficient()), tag);
                dev_alternative.update(std::abs(t_closed - sol_alt.transmission_coefficient()), tag);
                unitarity.update(std::abs(sol.transmission_coefficient() +
                                          sol.reflection_coefficient() - 1.0),
                                 tag);
                residual.update(sol.residual, tag);
            }
        }
        report.checks.push_back({"multi_closed_vs_lattice", dev_matched.where,
                                 dev_matched.value, 1e-8,
                                 dev_matched.value <= 1e-8, seconds_since(t0)});
        // The closed composition must match the (n+m-1)-site period and
        // must NOT match (n+m): both sides asserted so the convention is
        // actually identified rather than assumed.
        const bool identified =
            dev_matched.value <= 1e-8 && dev_alternative.value > 1e-3;
        report.checks.push_back(
            {"train_period_identification",
             "period n+m-1 dev " + format_double(dev_matched.value) +
                 "; period n+m dev " + format_double(dev_alternative.value),
             dev_matched.value, 1e-8, identified, seconds_since(t0)});
    }

    report.checks.push_back({"lattice_unitarity", unitarity.where,
                             unitarity.value, 1e-12, unitarity.value <= 1e-12,
                             0.0});
    report.checks.push_back({"lattice_residual", residual.where, residual.value,
                             1e-11, residual.value <= 1e-11, 0.0});

    // --- hand-checked reference point ---
    {
        const auto t0 = clock_type::now();
        const DispersionPair d = DispersionPair::at(1.0, 2.0);
        const double t_err = std::abs(transmission_coefficient(d, 1) - 0.2);
        const double d_err = std::abs(phase_shift(d, 1) + std::atan(0.5));
        const double worst = std::max(t_err, d_err);
        report.checks.push_back({"hand_reference_point",
                                 "u0=2 n=1 eps=1: T err " + format_double(t_err) +
                                     ", delta err " + format_double(d_err),
                                 worst, 1e-12, worst <= 1e-12, seconds_since(t0)});
    }

    // --- transfer-matrix determinants (scale-aware: products of huge
    //     elements carry relative rounding, so normalize by |t11|^2) ---
    {
        const auto t0 = clock_type::now();
        WorstCase det_dev;
        for (double u0 : heights) {
            for (int n : widths) {
                const double lo = 0.02 * std::min(u0, band_top);
                const double hi = 0.98 * std::min(u0, band_top - band_edge_margin);
                for (double eps : linspace(lo, hi, quick ? 9 : 25)) {
                    const DispersionPair d = DispersionPair::at(eps, u0);
                    const TransferMatrix t = single_barrier_matrix(d, n);
                    const double scale = std::max(1.0, std::norm(t.t11));
                    det_dev.update(std::abs(t.det() - 1.0) / scale,
                                   spot(u0, n, eps));
                }
            }
        }
        const PhysicalScenario sc2 = electron_scenario(2);
        for (int count : {2, 5, 13, 25}) {
            const BarrierSystem sys = sc2.system(2, count);
            for (double eh : linspace(0.05, 0.95, quick ? 9 : 25)) {
                const DispersionPair d =
                    DispersionPair::at(sys.upsilon0 * eh, sys.upsilon0);
                const TransferMatrix t = n_barrier_matrix(d, sys);
                const double scale = std::max(1.0, std::norm(t.t11));
                det_dev.update(std::abs(t.det() - 1.0) / scale,
                               "N=" + std::to_string(count) +
                                   " eh=" + format_double(eh));
            }
        }
        report.checks.push_back({"transfer_matrix_determinant", det_dev.where,
                                 det_dev.value, 1e-10, det_dev.value <= 1e-10,
                                 seconds_since(t0)});
    }

    // --- Chebyshev closed form vs direct long-double matrix power ---
    {
        const auto t0 = clock_type::now();
        using lcplx = std::complex<long double>;
        WorstCase cheb_dev;
        bool saw_oscillatory = false;
        bool saw_hyperbolic = false;
        const PhysicalScenario sc2 = electron_scenario(2);
        for (int count = 2; count <= 25; ++count) {
            const BarrierSystem sys = sc2.system(2, count);
            for (double eh : linspace(0.05, 0.95, quick ? 7 : 19)) {
                const DispersionPair d =
                    DispersionPair::at(sys.upsilon0 * eh, sys.upsilon0);
                const CellMatrix c = cell_matrix(d, sys);
                const ChebyshevPair u = chebyshev_pair(c.g, count);
                saw_oscillatory |= u.branch == ChebyshevBranch::oscillatory;
                saw_hyperbolic |= u.branch == ChebyshevBranch::hyperbolic;
                const TransferMatrix tn = n_barrier_matrix(d, sys);
                // (F^*)^N G^N by repeated multiplication.
                const lcplx g11(c.g11.real(), c.g11.imag());
                const lcplx g12(c.g12.real(), c.g12.imag());
                lcplx a11(1.0L, 0.0L), a12(0.0L, 0.0L);
                lcplx a21(0.0L, 0.0L), a22(1.0L, 0.0L);
                for (int k = 0; k < count; ++k) {
                    const lcplx b11 = g11 * a11 + g12 * a21;
                    const lcplx b12 = g11 * a12 + g12 * a22;
                    const lcplx b21 = std::conj(g12) * a11 + std::conj(g11) * a21;
                    const lcplx b22 = std::conj(g12) * a12 + std::conj(g11) * a22;
                    a11 = b11; a12 = b12; a21 = b21; a22 = b22;
                }
                const long double span =
                    static_cast<long double>(d.rho) * cell_period(sys) * count;
                const lcplx fstar_n(std::cos(span), -std::sin(span));
                const lcplx r11 = fstar_n * a11;
                const lcplx r12 = fstar_n * a12;
                const std::string tag = "N=" + std::to_string(count) +
                                        " eh=" + format_double(eh);
                auto elem_dev = [](std::complex<double> have, lcplx want) {
                    const long double num =
                        std::abs(lcplx(have.real(), have.imag()) - want);
                    const long double den = std::max<long double>(1.0L, std::abs(want));
                    return static_cast<double>(num / den);
                };
                cheb_dev.update(elem_dev(tn.t11, r11), tag);
                cheb_dev.update(elem_dev(tn.t12, r12), tag);
            }
        }
        const bool branches_covered = saw_oscillatory && saw_hyperbolic;
        report.checks.push_back(
            {"chebyshev_vs_matrix_power",
             cheb_dev.where +
                 (branches_covered ? "" : " [branch coverage incomplete]"),
             cheb_dev.value, 1e-10,
             cheb_dev.value <= 1e-10 && branches_covered, seconds_since(t0)});
    }

    // --- Chebyshev pair identity U_{N-1}^2 - U_N U_{N-2} = 1 ---
    {
        const auto t0 = clock_type::now();
        WorstCase pell;
        for (double g : {-2.5, -1.5, -1.000001, -0.9, -0.3, 0.0, 0.3, 0.9,
                         1.000001, 1.5, 2.5}) {
            for (int count = 1; count <= 25; ++count) {
                const ChebyshevPair u = chebyshev_pair(g, count);
                const double u_next = 2.0 * g * u.u_last - u.u_prev;
                const double expr = u.u_last * u.u_last - u_next * u.u_prev;
                const double scale = std::max(1.0, u.u_last * u.u_last);
                pell.update(std::abs(expr - 1.0) / scale,
                            "g=" + format_double(g) + " N=" + std::to_string(count));
            }
        }
        report.checks.push_back({"chebyshev_pair_identity", pell.where,
                                 pell.value, 1e-10, pell.value <= 1e-10,
                                 seconds_since(t0)});
    }

    // --- closed-form Wigner time vs numerical phase derivative ---
    {
        const auto t0 = clock_type::now();
        WorstCase time_dev;
        for (double u0 : heights) {
            for (int n : widths) {
                const double top = 0.95 * std::min(u0, band_top);
                for (double eps : linspace(0.03 * top, 0.97 * top,
                                           quick ? 7 : 21)) {
                    const DispersionPair d = DispersionPair::at(eps, u0);
                    const double closed = wigner_time(d, n);
                    double h = 1e-5 * eps;
                    h = std::min(h, 0.125 * (u0 - eps));
                    h = std::min(h, 0.125 * (band_top - eps));
                    h = std::min(h, 0.125 * eps);
                    const double numeric = phase_derivative(
                        [&](double e) {
                            return phase_shift(DispersionPair::at(e, u0), n);
                        },
                        eps, h);
                    time_dev.update(std::abs(closed - numeric) /
                                        std::max(1e-30, std::abs(closed)),
                                    spot(u0, n, eps));
                }
            }
        }
        report.checks.push_back({"time_closed_vs_numeric", time_dev.where,
                                 time_dev.value, 1e-6, time_dev.value <= 1e-6,
                                 seconds_since(t0)});
    }

    // --- single-barrier limit of the train formulas ---
    {
        const auto t0 = clock_type::now();
        WorstCase red;
        const double u0 = 1.0629971169130839; // electron scenario, n=2
        for (int m : {1, 5}) {
            const BarrierSystem sys{u0, 2, m, 1};
            for (double eh : linspace(0.05, 0.95, quick ? 9 : 31)) {
                const double eps = u0 * eh;
                const DispersionPair d = DispersionPair::at(eps, u0);
                const double expect = principal_angle(
                    phase_shift(d, 2) + (m - 1) * d.rho);
                const double got = phase_shift_multi(d, sys);
                red.update(std::abs(principal_angle(got - expect)),
                           "m=" + std::to_string(m) + " eh=" + format_double(eh));
            }
        }
        report.checks.push_back({"train_reduces_to_single_barrier", red.where,
                                 red.value, 1e-12, red.value <= 1e-12,
                                 seconds_since(t0)});
    }

    report.total_seconds = seconds_since(suite_start);
    report.all_pass = true;
    for (const CheckResult& c : report.checks) {
        report.all_pass = report.all_pass && c.pass;
    }
    return report;
}

std::string verify_report_json(const VerifyReport& report) {
    nlohmann::json doc;
    doc["tool"] = std::string("polyscat ") + version_string();
    doc["quick"] = report.quick;
    doc["all_pass"] = report.all_pass;
    doc["total_seconds"] = report.total_seconds;
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"detail", c.detail},
                          {"measured", c.measured},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass},
                          {"seconds", c.seconds}});
    }
    doc["checks"] = std::move(checks);
    return doc.dump(2);
}

} // namespace polyscat
