#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polyscat/dispersion.hpp"

namespace polyscat {

/// Inclusive uniform grid in E/U0 units.
struct EnergyGrid {
    double e_min = 0.01;
    double e_max = 0.99;
    int steps = 400; ///< number of points (>= 1; 1 means just e_min)

    void validate() const; ///< throws std::invalid_argument
    std::vector<double> points() const;
};

/// One energy sample of a sweep. Phases are principal-branch values;
/// times are dimensionless (tau units of m lambda^2 / hbar).
struct SweepPoint {
    double epsilon_hat = 0;
    double epsilon = 0;
    double t_poly = 0;
    double r_poly = 0;  ///< |R|^2 from the direct lattice solve
    double t_qm = 0;
    double delta_poly = 0;
    double delta_qm = 0;
    double tau_poly = 0;
    double tau_qm = 0;
    bool band_edge = false; ///< marks the clipped final row
    std::string error;      ///< non-empty if this point failed to evaluate
};

struct SweepOptions {
    int threads = 1;
    bool with_reflection = true; ///< run the lattice solve for |R|^2
};

/// A computed sweep plus everything needed to reproduce it.
struct SweepResult {
    PhysicalScenario scenario;
    BarrierSystem system;
    std::vector<SweepPoint> points;
    bool clipped = false;      ///< grid was truncated at the regime edge
    double requested_max = 0;  ///< e_max as asked
    double effective_max = 0;  ///< e_max actually swept
};

/// Single barrier: closed forms for T/delta/tau, lattice solve for |R|^2,
/// continuum baseline columns. The grid is clipped (with a marker on the
/// final row) to eh < min(1, ehat_max) so every point is in the tunneling
/// regime and inside the band.
SweepResult sweep_single(const PhysicalScenario& sc, const EnergyGrid& grid,
                         const SweepOptions& opts = {});

/// Barrier train (count >= 1, gap parameter m): composed closed forms,
/// numerical Wigner times, lattice solve for |R|^2, continuum counterparts
/// with the matching cell geometry.
SweepResult sweep_multi(const PhysicalScenario& sc, int gap_sites, int count,
                        const EnergyGrid& grid, const SweepOptions& opts = {});

/// Serialization. CSV: '#'-prefixed metadata lines (tool version, command,
/// scenario, constants, geometry, clip note, column list), one header row,
/// then comma-separated values with round-trip (17 significant digit)
/// formatting. JSON: {"meta": {...}, "rows": [...]}.
struct WriteOptions {
    bool seconds = false; ///< add tau_*_s columns (times in seconds)
    std::string command_line;
};

void write_csv(std::ostream& os, const SweepResult& r, const WriteOptions& w);
void write_json(std::ostream& os, const SweepResult& r, const WriteOptions& w);

/// Preset multi-curve datasets reproducing the four reference plots:
///   fig1: single-barrier transmission, continuum vs n=100 vs n=2
///   fig2: single-barrier Wigner time in seconds, same curves
///   fig3: triple-barrier (gap = width) transmission, same curves
///   fig4: triple-barrier Wigner time in seconds, same curves
/// Scenario: electron, U0 = 10 eV, L = 1.8e-10 m. Times are reported in
/// seconds because that unit is shared by all curves (hbar/U0 per unit of
/// d delta / d eh), whereas the lattice tau unit depends on n.
struct FigureData {
    std::string name;
    std::string note;
    std::vector<std::string> columns; ///< first column is epsilon_hat
    std::vector<std::vector<double>> rows;
};

FigureData run_figure(const std::string& name, int steps);

void write_figure_csv(std::ostream& os, const FigureData& f, const WriteOptions& w);
void write_figure_json(std::ostream& os, const FigureData& f, const WriteOptions& w);

/// Round-trip float formatting used by the CSV writers (shortest
/// representation that parses back to the identical double).
std::string format_double(double v);

} // namespace polyscat
