#pragma once

#include <functional>
#include <span>

namespace polyscat {

/// Map an angle to the principal branch (-pi, pi].
double principal_angle(double a);

/// Richardson-extrapolated central difference: combines steps h and h/2
/// for an O(h^4) derivative estimate of f at x.
double richardson_derivative(const std::function<double(double)>& f,
                             double x, double h);

/// Same differentiator for angle-valued functions: each stencil sample is
/// unwrapped by +-2pi toward the center sample first, so a branch cut of
/// the principal value inside the stencil does not corrupt the estimate.
double phase_derivative(const std::function<double(double)>& phase,
                        double x, double h);

/// In-place cumulative unwrap: adds multiples of 2pi so consecutive samples
/// differ by less than pi. Input is assumed ordered along a sweep.
void unwrap_phases(std::span<double> phases);

} // namespace polyscat
