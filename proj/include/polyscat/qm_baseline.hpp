#pragma once

#include "polyscat/dispersion.hpp"

namespace polyscat {

/// Continuum (standard quantum) transmission through one rectangular
/// barrier, in reduced variables alpha = 2 m L^2 U0 / hbar^2 and
/// eh = E/U0 in (0, 1):
///   T = 1 / (1 + sinh^2(X) / (4 eh (1 - eh))),  X = sqrt(alpha (1 - eh)).
double qm_transmission(double alpha, double epsilon_hat);

/// Continuum scattering phase, same convention as the lattice phase_shift:
///   delta = -arctan( (X^2 - Y^2)/(2 X Y) tanh X ),  Y = sqrt(alpha eh).
double qm_phase_shift(double alpha, double epsilon_hat);

/// Continuum Wigner time in the lattice time unit: d delta / d eps with
/// eps = upsilon0 * eh, computed with the same differentiator used for the
/// lattice curves so the two are directly comparable.
double qm_wigner_time(double alpha, double epsilon_hat, double upsilon0);

/// Continuum counterparts for a train of barriers, composed with the same
/// transfer-matrix algebra and the same effective cell span as the lattice
/// system (cell length (n + m - 1) lambda, i.e. gap (m - 1) lambda), so
/// lattice-vs-continuum comparisons are like for like. The reduced height
/// alpha is recovered from the system as 2 n^2 upsilon0.
double qm_transmission_multi(const BarrierSystem& sys, double epsilon_hat);
double qm_phase_shift_multi(const BarrierSystem& sys, double epsilon_hat);
double qm_wigner_time_multi(const BarrierSystem& sys, double epsilon_hat);

} // namespace polyscat
