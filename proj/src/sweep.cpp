#include "polyscat/sweep.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "polyscat/lattice_oracle.hpp"
#include "polyscat/qm_baseline.hpp"
#include "polyscat/single_barrier.hpp"
#include "polyscat/transfer_matrix.hpp"
#include "polyscat/verify.hpp"

namespace polyscat {

namespace {

constexpr double clip_back_off = 1e-6; // relative back-off from the regime edge

// Fraction of U0 below which every formula in the sweep is defined: the
// tunneling bound (eh < 1) and the kinetic band top (eps < 2) combined.
double regime_limit(const PhysicalScenario& sc) {
    return std::min(1.0, sc.epsilon_hat_max()) * (1.0 - clip_back_off);
}

void run_chunked(int points, int threads, const std::function<void(int)>& work) {
    if (threads <= 1 || points < 2 * threads) {
        for (int i = 0; i < points; ++i) {
            work(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const int chunk = (points + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int begin = t * chunk;
        const int end = std::min(points, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&work, begin, end] {
            for (int i = begin; i < end; ++i) {
                work(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

struct GridSetup {
    std::vector<double> ehat;
    bool clipped = false;
    double effective_max = 0;
};

GridSetup clip_grid(const PhysicalScenario& sc, const EnergyGrid& grid) {
    grid.validate();
    const double limit = regime_limit(sc);
    if (!(grid.e_min < limit)) {
        throw std::invalid_argument("grid starts beyond the tunneling/band limit");
    }
    GridSetup setup;
    EnergyGrid used = grid;
    if (grid.e_max > limit) {
        used.e_max = limit;
        setup.clipped = true;
    }
    setup.effective_max = used.e_max;
    setup.ehat = used.points();
    return setup;
}

} // namespace

void EnergyGrid::validate() const {
    if (!(e_min > 0)) {
        throw std::invalid_argument("grid minimum must be positive");
    }
    if (!(e_max >= e_min)) {
        throw std::invalid_argument("grid maximum must be >= minimum");
    }
    if (steps < 1) {
        throw std::invalid_argument("grid needs at least one point");
    }
    if (steps == 1 && e_max != e_min) {
        throw std::invalid_argument("single-point grid needs e_min == e_max");
    }
}

std::vector<double> EnergyGrid::points() const {
    validate();
    std::vector<double> p(static_cast<std::size_t>(steps));
    if (steps == 1) {
        p[0] = e_min;
        return p;
    }
    const double step = (e_max - e_min) / static_cast<double>(steps - 1);
    for (int i = 0; i < steps; ++i) {
        p[static_cast<std::size_t>(i)] = e_min + step * i;
    }
    p.back() = e_max;
    return p;
}

SweepResult sweep_single(const PhysicalScenario& sc, const EnergyGrid& grid,
                         const SweepOptions& opts) {
    sc.validate();
    const GridSetup setup = clip_grid(sc, grid);
    const double u0 = sc.upsilon0();
    const double alpha = sc.alpha();
    const PotentialProfile profile = barrier_profile(u0, sc.n);

    SweepResult result;
    result.scenario = sc;
    result.system = sc.system(1, 1);
    result.clipped = setup.clipped;
    result.requested_max = grid.e_max;
    result.effective_max = setup.effective_max;
    result.points.resize(setup.ehat.size());

    auto eval = [&](int i) {
        SweepPoint& row = result.points[static_cast<std::size_t>(i)];
        row.epsilon_hat = setup.ehat[static_cast<std::size_t>(i)];
        row.epsilon = u0 * row.epsilon_hat;
        try {
            const DispersionPair d = DispersionPair::at(row.epsilon, u0);
            row.t_poly = transmission_coefficient(d, sc.n);
            row.delta_poly = phase_shift(d, sc.n);
            row.tau_poly = wigner_time(d, sc.n);
            row.t_qm = qm_transmission(alpha, row.epsilon_hat);
            row.delta_qm = qm_phase_shift(alpha, row.epsilon_hat);
            row.tau_qm = qm_wigner_time(alpha, row.epsilon_hat, u0);
            if (opts.with_reflection) {
                row.r_poly = solve_scattering(profile, row.epsilon).reflection_coefficient();
            } else {
                row.r_poly = std::nan("");
            }
        } catch (const std::exception& e) {
            row.error = e.what();
            row.t_poly = row.r_poly = row.t_qm = std::nan("");
            row.delta_poly = row.delta_qm = std::nan("");
            row.tau_poly = row.tau_qm = std::nan("");
        }
    };
    run_chunked(static_cast<int>(setup.ehat.size()), opts.threads, eval);

    if (result.clipped && !result.points.empty()) {
        result.points.back().band_edge = true;
    }
    return result;
}

SweepResult sweep_multi(const PhysicalScenario& sc, int gap_sites, int count,
                        const EnergyGrid& grid, const SweepOptions& opts) {
    sc.validate();
    const GridSetup setup = clip_grid(sc, grid);
    const BarrierSystem sys = sc.system(gap_sites, count);
    const PotentialProfile profile = barrier_train_profile(sys, matched_period(sys));

    SweepResult result;
    result.scenario = sc;
    result.system = sys;
    result.clipped = setup.clipped;
    result.requested_max = grid.e_max;
    result.effective_max = setup.effective_max;
    result.points.resize(setup.ehat.size());

    auto eval = [&](int i) {
        SweepPoint& row = result.points[static_cast<std::size_t>(i)];
        row.epsilon_hat = setup.ehat[static_cast<std::size_t>(i)];
        row.epsilon = sys.upsilon0 * row.epsilon_hat;
        try {
            const DispersionPair d = DispersionPair::at(row.epsilon, sys.upsilon0);
            row.t_poly = transmission_multi(d, sys);
            row.delta_poly = phase_shift_multi(d, sys);
            row.tau_poly = wigner_time_multi(sys, row.epsilon);
            row.t_qm = qm_transmission_multi(sys, row.epsilon_hat);
            row.delta_qm = qm_phase_shift_multi(sys, row.epsilon_hat);
            row.tau_qm = qm_wigner_time_multi(sys, row.epsilon_hat);
            if (opts.with_reflection) {
                row.r_poly = solve_scattering(profile, row.epsilon).reflection_coefficient();
            } else {
                row.r_poly = std::nan("");
            }
        } catch (const std::exception& e) {
            row.error = e.what();
            row.t_poly = row.r_poly = row.t_qm = std::nan("");
            row.delta_poly = row.delta_qm = std::nan("");
            row.tau_poly = row.tau_qm = std::nan("");
        }
    };
    run_chunked(static_cast<int>(setup.ehat.size()), opts.threads, eval);

    if (result.clipped && !result.points.empty()) {
        result.points.back().band_edge = true;
    }
    return result;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> sweep_columns(bool seconds) {
    std::vector<std::string> cols = {"epsilon_hat", "epsilon",  "t_poly",
                                     "r_poly",      "t_qm",     "delta_poly",
                                     "delta_qm",    "tau_poly", "tau_qm"};
    if (seconds) {
        cols.push_back("tau_poly_s");
        cols.push_back("tau_qm_s");
    }
    cols.push_back("band_edge");
    cols.push_back("error");
    return cols;
}

std::vector<double> sweep_values(const SweepPoint& p, bool seconds,
                                 double time_unit) {
    std::vector<double> v = {p.epsilon_hat, p.epsilon,  p.t_poly,
                             p.r_poly,      p.t_qm,     p.delta_poly,
                             p.delta_qm,    p.tau_poly, p.tau_qm};
    if (seconds) {
        v.push_back(p.tau_poly * time_unit);
        v.push_back(p.tau_qm * time_unit);
    }
    return v;
}

void write_meta_lines(std::ostream& os, const SweepResult& r,
                      const WriteOptions& w) {
    const PhysicalScenario& sc = r.scenario;
    os << "# tool: polyscat " << version_string() << "\n";
    if (!w.command_line.empty()) {
        os << "# command: " << w.command_line << "\n";
    }
    os << "# mass_kg: " << format_double(sc.mass_kg) << "\n"
       << "# barrier_height_ev: " << format_double(sc.barrier_height_ev) << "\n"
       << "# barrier_width_m: " << format_double(sc.barrier_width_m) << "\n"
       << "# n: " << sc.n << "\n"
       << "# gap_sites: " << r.system.m << "\n"
       << "# barriers: " << r.system.count << "\n"
       << "# alpha: " << format_double(sc.alpha()) << "\n"
       << "# upsilon0: " << format_double(sc.upsilon0()) << "\n"
       << "# lattice_spacing_m: " << format_double(sc.lattice_spacing_m()) << "\n"
       << "# time_unit_s: " << format_double(sc.time_unit_s()) << "\n"
       << "# hbar_js: " << format_double(sc.constants.hbar_js) << "\n"
       << "# ev_joule: " << format_double(sc.constants.ev_joule) << "\n"
       << "# phases: principal branch, radians\n"
       << "# times: d delta / d epsilon, dimensionless"
       << (w.seconds ? "; *_s columns in seconds" : "") << "\n";
    if (r.clipped) {
        os << "# band-edge clip: requested e_max "
           << format_double(r.requested_max) << " truncated at "
           << format_double(r.effective_max)
           << " (tunneling/band limit); final row flagged\n";
    }
}

nlohmann::json meta_json(const SweepResult& r, const WriteOptions& w) {
    const PhysicalScenario& sc = r.scenario;
    nlohmann::json meta{
        {"tool", std::string("polyscat ") + version_string()},
        {"mass_kg", sc.mass_kg},
        {"barrier_height_ev", sc.barrier_height_ev},
        {"barrier_width_m", sc.barrier_width_m},
        {"n", sc.n},
        {"gap_sites", r.system.m},
        {"barriers", r.system.count},
        {"alpha", sc.alpha()},
        {"upsilon0", sc.upsilon0()},
        {"lattice_spacing_m", sc.lattice_spacing_m()},
        {"time_unit_s", sc.time_unit_s()},
        {"hbar_js", sc.constants.hbar_js},
        {"ev_joule", sc.constants.ev_joule},
        {"phases", "principal branch, radians"},
    };
    if (!w.command_line.empty()) {
        meta["command"] = w.command_line;
    }
    if (r.clipped) {
        meta["band_edge_clip"] = {{"requested_max", r.requested_max},
                                  {"effective_max", r.effective_max}};
    }
    return meta;
}

} // namespace

void write_csv(std::ostream& os, const SweepResult& r, const WriteOptions& w) {
    write_meta_lines(os, r, w);
    const auto cols = sweep_columns(w.seconds);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << (i ? "," : "") << cols[i];
    }
    os << "\n";
    const double tu = r.scenario.time_unit_s();
    for (const SweepPoint& p : r.points) {
        for (double v : sweep_values(p, w.seconds, tu)) {
            os << format_double(v) << ",";
        }
        os << (p.band_edge ? 1 : 0) << "," << p.error << "\n";
    }
}

void write_json(std::ostream& os, const SweepResult& r, const WriteOptions& w) {
    nlohmann::json doc;
    doc["meta"] = meta_json(r, w);
    const auto cols = sweep_columns(w.seconds);
    const double tu = r.scenario.time_unit_s();
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepPoint& p : r.points) {
        nlohmann::json row;
        const auto vals = sweep_values(p, w.seconds, tu);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (std::isnan(vals[i])) {
                row[cols[i]] = nullptr;
            } else {
                row[cols[i]] = vals[i];
            }
        }
        row["band_edge"] = p.band_edge;
        row["error"] = p.error;
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << "\n";
}

namespace {

PhysicalScenario reference_scenario(int n) {
    PhysicalScenario sc;
    sc.mass_kg = default_constants().electron_mass_kg;
    sc.barrier_height_ev = 10.0;
    sc.barrier_width_m = 1.8e-10;
    sc.n = n;
    return sc;
}

} // namespace

FigureData run_figure(const std::string& name, int steps) {
    if (steps < 2) {
        throw std::invalid_argument("figure needs at least two grid points");
    }
    const PhysicalScenario sc100 = reference_scenario(100);
    const PhysicalScenario sc2 = reference_scenario(2);
    const double alpha = sc100.alpha();
    const double u0_100 = sc100.upsilon0();
    const double u0_2 = sc2.upsilon0();
    // Seconds per unit of d delta / d eh: hbar / U0, independent of n.
    const double tau_to_seconds = sc100.time_unit_s() / u0_100;

    EnergyGrid grid{0.01, 0.99, steps};
    const std::vector<double> ehat = grid.points();

    FigureData f;
    f.name = name;
    const bool transmission = (name == "fig1" || name == "fig3");
    const bool single = (name == "fig1" || name == "fig2");
    if (!single && name != "fig3" && name != "fig4") {
        throw std::invalid_argument("unknown figure '" + name + "' (fig1..fig4)");
    }

    if (transmission) {
        f.columns = {"epsilon_hat", "t_qm", "t_poly_n100", "t_poly_n2"};
    } else {
        f.columns = {"epsilon_hat", "tau_qm_s", "tau_poly_n100_s", "tau_poly_n2_s"};
    }
    f.note = single ? "single barrier, electron, U0 = 10 eV, L = 1.8e-10 m"
                    : "three barriers, gap = width, electron, U0 = 10 eV, L = 1.8e-10 m";

    // Triple-barrier systems: lattice curves use the lattice geometry
    // (gap (m-1) sites with m = n); the continuum reference uses the true
    // gap-equals-width layout, i.e. cell span 2L exactly (m = n + 1).
    const BarrierSystem lat100 = sc100.system(100, 3);
    const BarrierSystem lat2 = sc2.system(2, 3);
    const BarrierSystem cont = sc100.system(101, 3);

    for (double eh : ehat) {
        std::vector<double> row{eh};
        if (name == "fig1") {
            row.push_back(qm_transmission(alpha, eh));
            row.push_back(transmission_coefficient(DispersionPair::at(u0_100 * eh, u0_100), 100));
            row.push_back(transmission_coefficient(DispersionPair::at(u0_2 * eh, u0_2), 2));
        } else if (name == "fig2") {
            row.push_back(qm_wigner_time(alpha, eh, u0_100) * u0_100 * tau_to_seconds);
            row.push_back(wigner_time(DispersionPair::at(u0_100 * eh, u0_100), 100) * u0_100 * tau_to_seconds);
            row.push_back(wigner_time(DispersionPair::at(u0_2 * eh, u0_2), 2) * u0_2 * tau_to_seconds);
        } else if (name == "fig3") {
            row.push_back(qm_transmission_multi(cont, eh));
            row.push_back(transmission_multi_at(lat100, u0_100 * eh));
            row.push_back(transmission_multi_at(lat2, u0_2 * eh));
        } else {
            row.push_back(qm_wigner_time_multi(cont, eh) * u0_100 * tau_to_seconds);
            row.push_back(wigner_time_multi(lat100, u0_100 * eh) * u0_100 * tau_to_seconds);
            row.push_back(wigner_time_multi(lat2, u0_2 * eh) * u0_2 * tau_to_seconds);
        }
        f.rows.push_back(std::move(row));
    }
    return f;
}

void write_figure_csv(std::ostream& os, const FigureData& f, const WriteOptions& w) {
    os << "# tool: polyscat " << version_string() << "\n";
    if (!w.command_line.empty()) {
        os << "# command: " << w.command_line << "\n";
    }
    os << "# figure: " << f.name << "\n# scenario: " << f.note << "\n";
    for (std::size_t i = 0; i < f.columns.size(); ++i) {
        os << (i ? "," : "") << f.columns[i];
    }
    os << "\n";
    for (const auto& row : f.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_double(row[i]);
        }
        os << "\n";
    }
}

void write_figure_json(std::ostream& os, const FigureData& f, const WriteOptions& w) {
    nlohmann::json doc;
    doc["meta"] = {{"tool", std::string("polyscat ") + version_string()},
                   {"figure", f.name},
                   {"scenario", f.note}};
    if (!w.command_line.empty()) {
        doc["meta"]["command"] = w.command_line;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : f.rows) {
        nlohmann::json r;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (std::isnan(row[i])) {
                r[f.columns[i]] = nullptr;
            } else {
                r[f.columns[i]] = row[i];
            }
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << "\n";
}

} // namespace polyscat
