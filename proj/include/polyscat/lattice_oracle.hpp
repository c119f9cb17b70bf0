#pragma once

#include <complex>
#include <vector>

#include "polyscat/dispersion.hpp"

namespace polyscat {

/// Site-resolved potential on sites 0..W (free leads outside).
struct PotentialProfile {
    std::vector<double> site_value;

    int last_site() const { return static_cast<int>(site_value.size()) - 1; }
};

/// Endpoint convention for the discretized rectangular barrier.
enum class EdgeConvention {
    half_height, ///< interface sites carry upsilon0/2 (matches closed forms)
    full_height  ///< interface sites carry upsilon0 (negative control)
};

/// Single rectangular barrier across sites 0..n: interior sites at
/// upsilon0, the two edge sites per the convention. The half-height edges
/// are what the matching conditions produce: summing the free and barrier
/// difference equations at a shared edge site leaves that site with
/// upsilon0/2.
PotentialProfile barrier_profile(double upsilon0, int n,
                                 EdgeConvention edge = EdgeConvention::half_height);

/// Train of `count` identical barriers, one every `period` sites, built
/// additively from single-barrier profiles (so period = n the barriers
/// fuse into one thick barrier, exactly as the closed forms do for m = 1).
PotentialProfile barrier_train_profile(const BarrierSystem& sys, int period,
                                       EdgeConvention edge = EdgeConvention::half_height);

/// Period that reproduces the composed closed forms: cell_period = n+m-1.
int matched_period(const BarrierSystem& sys);

/// Direct solution of the scattering problem on the lattice.
struct OracleSolution {
    std::complex<double> reflection;   ///< R
    std::complex<double> transmission; ///< T (includes propagation phase)
    std::vector<std::complex<double>> psi; ///< sites 0..W
    double residual; ///< max |defect| over every difference equation

    double transmission_coefficient() const { return std::norm(transmission); }
    double reflection_coefficient() const { return std::norm(reflection); }
};

/// Solve the difference equation
///   psi_{mu+1} + psi_{mu-1} = 2 [1 - (eps - v_mu)] psi_mu
/// with scattering boundary conditions
///   psi_mu = e^{i rho mu} + R e^{-i rho mu}  (mu <= 0),
///   psi_mu = T e^{i rho mu}                  (mu >= W),
/// eliminating the exterior via psi_{-1} and psi_{W+1}. In the unknown
/// ordering (R, psi_0..psi_W, T) the system is tridiagonal; it is solved
/// by banded LU with partial pivoting (one fill superdiagonal), and the
/// returned residual is evaluated on the full set of equations afterwards.
/// Regime-agnostic: valid above the barrier too, anywhere inside the band.
OracleSolution solve_scattering(const PotentialProfile& profile, double epsilon);

} // namespace polyscat
