#pragma once

#include <stdexcept>

#include "polyscat/constants.hpp"

namespace polyscat {

/// Requested energy sits outside (or numerically too close to the edge of)
/// the lattice kinetic band 0 < eps < 2.
class band_error : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Requested energy is at or above the barrier top; the evanescent
/// closed forms only cover the tunneling regime eps < upsilon0.
class regime_error : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Top of the lattice kinetic band in dimensionless energy units.
inline constexpr double band_top = 2.0;

/// Energies within this distance of a band edge are refused: the exterior
/// wavenumber rho degenerates there and scattering quantities lose meaning.
inline constexpr double band_edge_margin = 1e-9;

/// Exterior lattice wavenumber: eps = 1 - cos(rho), rho in (0, pi).
/// Throws band_error outside the open band.
double rho_of_epsilon(double epsilon);

/// In-barrier evanescent rate: eps - upsilon0 = 1 - cosh(kappa), kappa > 0.
/// Evaluated in logarithmic form, accurate for upsilon0 - eps down to ~1e-300.
/// Throws regime_error for eps >= upsilon0 and band_error outside the band.
double kappa_of_epsilon(double epsilon, double upsilon0);

/// The four quantities every scattering formula is built from.
/// sigma = sin(rho) and xi = sinh(kappa) are computed algebraically from the
/// energy (sqrt forms) so they stay fully accurate near the regime edges.
struct DispersionPair {
    double rho;    ///< exterior wavenumber
    double kappa;  ///< in-barrier evanescent rate
    double sigma;  ///< sin(rho)  = sqrt(eps (2 - eps))
    double xi;     ///< sinh(kappa) = sqrt((u0 - eps)(2 + u0 - eps))

    static DispersionPair at(double epsilon, double upsilon0);
};

/// Barrier train geometry in lattice units. A single barrier is count == 1.
struct BarrierSystem {
    double upsilon0 = 1.0; ///< barrier height, dimensionless
    int n = 1;             ///< barrier width in lattice sites
    int m = 1;             ///< gap parameter between consecutive barriers
    int count = 1;         ///< number of identical barriers

    /// Throws std::invalid_argument on non-physical parameters.
    void validate() const;
};

/// Lab-frame description of a barrier problem plus the constants needed to
/// reduce it. The lattice spacing is width/n: the barrier spans n sites.
struct PhysicalScenario {
    double mass_kg;          ///< particle mass
    double barrier_height_ev;///< U0 in eV
    double barrier_width_m;  ///< L in meters
    int n;                   ///< lattice sites across the barrier width
    PhysicalConstants constants{};

    double lattice_spacing_m() const; ///< lambda = L / n
    double alpha() const;             ///< 2 m L^2 U0 / hbar^2
    double upsilon0() const;          ///< alpha / (2 n^2)
    double epsilon_of(double epsilon_hat) const;  ///< eps = upsilon0 * ehat
    double epsilon_hat_max() const;   ///< band top in E/U0 units: 4 n^2 / alpha
    double time_unit_s() const;       ///< m lambda^2 / hbar, seconds per tau unit

    /// Dimensionless geometry for this scenario.
    BarrierSystem system(int gap_sites = 1, int barrier_count = 1) const;

    /// Throws std::invalid_argument on non-physical parameters.
    void validate() const;
};

} // namespace polyscat
