#include "polyscat/deriv.hpp"

#include <cmath>
#include <numbers>

namespace polyscat {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Nearest representative of `a` in the branch centered on `ref`.
double unwrap_toward(double a, double ref) {
    return a - two_pi * std::round((a - ref) / two_pi);
}

} // namespace

double principal_angle(double a) {
    double r = std::remainder(a, two_pi);
    if (r <= -std::numbers::pi) {
        r += two_pi;
    }
    return r;
}

double richardson_derivative(const std::function<double(double)>& f,
                             double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

double phase_derivative(const std::function<double(double)>& phase,
                        double x, double h) {
    const double center = phase(x);
    auto sample = [&](double t) { return unwrap_toward(phase(t), center); };
    const double d1 = (sample(x + h) - sample(x - h)) / (2.0 * h);
    const double d2 = (sample(x + 0.5 * h) - sample(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

void unwrap_phases(std::span<double> phases) {
    for (std::size_t i = 1; i < phases.size(); ++i) {
        phases[i] = unwrap_toward(phases[i], phases[i - 1]);
    }
}

} // namespace polyscat
