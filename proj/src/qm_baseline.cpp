#include "polyscat/qm_baseline.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "polyscat/deriv.hpp"
#include "polyscat/transfer_matrix.hpp"

namespace polyscat {

namespace {

void require_fraction(double eh) {
    if (!(eh > 0) || !(eh < 1)) {
        throw std::domain_error("energy fraction must lie in (0, 1)");
    }
}

struct ContinuumCell {
    std::complex<double> g11, g12;
    double g;
};

// Continuum single-barrier transfer matrix times the free cell propagation,
// mirroring the lattice composition: X = kappa_c L, Y = k L, barrier span
// phase e^{-iY}, cell span (n + m - 1)/n barrier widths.
ContinuumCell continuum_cell(const BarrierSystem& sys, double eh) {
    const double alpha = 2.0 * static_cast<double>(sys.n) * sys.n * sys.upsilon0;
    const double x = std::sqrt(alpha * (1.0 - eh));
    const double y = std::sqrt(alpha * eh);
    const double two_xy = 2.0 * x * y;
    const double sh = std::sinh(x);
    const std::complex<double> barrier_phase(std::cos(y), -std::sin(y));
    const std::complex<double> t11 =
        std::complex<double>(std::cosh(x), (y * y - x * x) / two_xy * sh) *
        barrier_phase;
    const std::complex<double> t12 =
        std::complex<double>(0.0, -(x * x + y * y) / two_xy * sh) * barrier_phase;
    const double span = y * static_cast<double>(cell_period(sys)) /
                        static_cast<double>(sys.n);
    const std::complex<double> f11(std::cos(span), std::sin(span));
    ContinuumCell c;
    c.g11 = t11 * f11;
    c.g12 = t12 * std::conj(f11);
    c.g = c.g11.real();
    return c;
}

} // namespace

double qm_transmission(double alpha, double epsilon_hat) {
    require_fraction(epsilon_hat);
    const double x = std::sqrt(alpha * (1.0 - epsilon_hat));
    const double p =
        std::sinh(x) / (2.0 * std::sqrt(epsilon_hat * (1.0 - epsilon_hat)));
    return 1.0 / (1.0 + p * p);
}

double qm_phase_shift(double alpha, double epsilon_hat) {
    require_fraction(epsilon_hat);
    const double x = std::sqrt(alpha * (1.0 - epsilon_hat));
    const double q = (1.0 - 2.0 * epsilon_hat) /
                     (2.0 * std::sqrt(epsilon_hat * (1.0 - epsilon_hat)));
    return -std::atan(q * std::tanh(x));
}

double qm_wigner_time(double alpha, double epsilon_hat, double upsilon0) {
    require_fraction(epsilon_hat);
    const double eps = upsilon0 * epsilon_hat;
    double h = 1e-5 * eps;
    h = std::min(h, 0.125 * (upsilon0 - eps));
    h = std::min(h, 0.125 * eps);
    return phase_derivative(
        [&](double e) { return qm_phase_shift(alpha, e / upsilon0); }, eps, h);
}

double qm_transmission_multi(const BarrierSystem& sys, double epsilon_hat) {
    require_fraction(epsilon_hat);
    sys.validate();
    const ContinuumCell c = continuum_cell(sys, epsilon_hat);
    const ChebyshevPair u = chebyshev_pair(c.g, sys.count);
    const double p = std::abs(c.g12) * u.u_last;
    return 1.0 / (1.0 + p * p);
}

double qm_phase_shift_multi(const BarrierSystem& sys, double epsilon_hat) {
    require_fraction(epsilon_hat);
    sys.validate();
    const ContinuumCell c = continuum_cell(sys, epsilon_hat);
    const ChebyshevPair u = chebyshev_pair(c.g, sys.count);
    return std::atan2(u.u_last * c.g11.imag(),
                      u.u_last * c.g11.real() - u.u_prev);
}

double qm_wigner_time_multi(const BarrierSystem& sys, double epsilon_hat) {
    require_fraction(epsilon_hat);
    const double eps = sys.upsilon0 * epsilon_hat;
    double h = 1e-5 * eps;
    h = std::min(h, 0.125 * (sys.upsilon0 - eps));
    h = std::min(h, 0.125 * eps);
    return phase_derivative(
        [&](double e) { return qm_phase_shift_multi(sys, e / sys.upsilon0); },
        eps, h);
}

} // namespace polyscat
