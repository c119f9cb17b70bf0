#include "polyscat/dispersion.hpp"

#include <cmath>
#include <string>

namespace polyscat {

namespace {

void require_in_band(double epsilon) {
    if (!(epsilon > band_edge_margin) || !(epsilon < band_top - band_edge_margin)) {
        throw band_error("energy " + std::to_string(epsilon) +
                         " is outside the open band (" +
                         std::to_string(band_edge_margin) + ", 2 - " +
                         std::to_string(band_edge_margin) + ")");
    }
}

} // namespace

double rho_of_epsilon(double epsilon) {
    require_in_band(epsilon);
    return std::acos(1.0 - epsilon);
}

double kappa_of_epsilon(double epsilon, double upsilon0) {
    require_in_band(epsilon);
    const double u = upsilon0 - epsilon;
    if (!(u > 0)) {
        throw regime_error("energy " + std::to_string(epsilon) +
                           " is not below the barrier top " +
                           std::to_string(upsilon0));
    }
    // cosh(kappa) = 1 + u; the log form log1p(u + sqrt(u (2 + u))) keeps
    // full precision as u -> 0 where kappa ~ sqrt(2 u).
    return std::log1p(u + std::sqrt(u * (2.0 + u)));
}

DispersionPair DispersionPair::at(double epsilon, double upsilon0) {
    DispersionPair d;
    d.rho = rho_of_epsilon(epsilon);
    d.kappa = kappa_of_epsilon(epsilon, upsilon0);
    d.sigma = std::sqrt(epsilon * (band_top - epsilon));
    const double u = upsilon0 - epsilon;
    d.xi = std::sqrt(u * (2.0 + u));
    return d;
}

void BarrierSystem::validate() const {
    if (!(upsilon0 > 0)) {
        throw std::invalid_argument("barrier height must be positive");
    }
    if (n < 1) {
        throw std::invalid_argument("barrier width must be at least one site");
    }
    if (m < 1) {
        throw std::invalid_argument("gap parameter must be at least 1");
    }
    if (count < 1) {
        throw std::invalid_argument("barrier count must be at least 1");
    }
}

double PhysicalScenario::lattice_spacing_m() const {
    return barrier_width_m / static_cast<double>(n);
}

double PhysicalScenario::alpha() const {
    const double u0_j = barrier_height_ev * constants.ev_joule;
    return 2.0 * mass_kg * barrier_width_m * barrier_width_m * u0_j /
           (constants.hbar_js * constants.hbar_js);
}

double PhysicalScenario::upsilon0() const {
    return alpha() / (2.0 * static_cast<double>(n) * static_cast<double>(n));
}

double PhysicalScenario::epsilon_of(double epsilon_hat) const {
    return upsilon0() * epsilon_hat;
}

double PhysicalScenario::epsilon_hat_max() const {
    return 4.0 * static_cast<double>(n) * static_cast<double>(n) / alpha();
}

double PhysicalScenario::time_unit_s() const {
    const double lambda = lattice_spacing_m();
    return mass_kg * lambda * lambda / constants.hbar_js;
}

BarrierSystem PhysicalScenario::system(int gap_sites, int barrier_count) const {
    BarrierSystem sys{upsilon0(), n, gap_sites, barrier_count};
    sys.validate();
    return sys;
}

void PhysicalScenario::validate() const {
    if (!(mass_kg > 0)) {
        throw std::invalid_argument("mass must be positive");
    }
    if (!(barrier_height_ev > 0)) {
        throw std::invalid_argument("barrier height must be positive");
    }
    if (!(barrier_width_m > 0)) {
        throw std::invalid_argument("barrier width must be positive");
    }
    if (n < 1) {
        throw std::invalid_argument("site count must be at least 1");
    }
    if (!(constants.hbar_js > 0) || !(constants.ev_joule > 0)) {
        throw std::invalid_argument("constants must be positive");
    }
}

} // namespace polyscat
