#pragma once

#include <complex>

#include "polyscat/dispersion.hpp"

namespace polyscat {

/// Transmitted amplitude across one rectangular barrier of width n sites:
///   T = e^{-i rho n} / [cosh(kappa n) + i q sinh(kappa n)],
///   q = (xi^2 - sigma^2) / (2 xi sigma).
/// Safe against cosh overflow for large kappa*n (amplitude underflows to 0).
std::complex<double> transmission_amplitude(const DispersionPair& d, int n);

/// Transmission coefficient |T|^2 = 1 / (1 + r^2 sinh^2(kappa n)),
/// r = (xi^2 + sigma^2) / (2 xi sigma). Always in (0, 1].
double transmission_coefficient(const DispersionPair& d, int n);

/// Scattering phase of the transmitted wave relative to free propagation:
///   delta = -arctan(q tanh(kappa n)),  principal value.
double phase_shift(const DispersionPair& d, int n);

/// Wigner phase time tau = d delta / d eps in closed form:
/// numerator   2 n sigma (xi^2 - sigma^2)
///           + (xi^2 + sigma^2) ((xi/sigma) cos rho + (sigma/xi) cosh kappa)
///             * sinh(2 kappa n)
/// denominator (xi^2 + sigma^2)^2 cosh^2(kappa n) - (xi^2 - sigma^2)^2.
/// Dimensionless; multiply by m lambda^2 / hbar for seconds.
double wigner_time(const DispersionPair& d, int n);

/// Documented low-energy lattice correction to the continuum transmission:
///   Delta = -(2/3) (alpha/n^2) (eh^2 - (1-eh)^2) / (eh (1-eh))
///           * sinh^2(sqrt(alpha (1-eh))),
/// with eh = E/U0 in (0, 1). Vanishes exactly at eh = 1/2. Kept verbatim as
/// the published expansion; see continuum_deviation for the expression that
/// actually reproduces the measured lattice-continuum difference.
double low_energy_correction(double alpha, int n, double epsilon_hat);

/// Second-order (in lattice spacing) deviation of the lattice transmission
/// from the continuum value, T_lattice - T_continuum:
///   Tqm^2 * alpha / (16 eh (1-eh) n^2)
///   * [ (eh^2 - (1-eh)^2) sinh^2 X + ((1-eh) X / 3) sinh X cosh X ],
/// X = sqrt(alpha (1-eh)). Reference for convergence tests: the measured
/// difference divided by this expression tends to 1 as n grows.
double continuum_deviation(double alpha, int n, double epsilon_hat);

} // namespace polyscat
