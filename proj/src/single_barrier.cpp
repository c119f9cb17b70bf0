#include "polyscat/single_barrier.hpp"

#include <cmath>
#include <stdexcept>

namespace polyscat {

namespace {

// cosh/sinh overflow past ~710; beyond this exponent the barrier is fully
// opaque and asymptotic forms are exact to double precision.
constexpr double opaque_exponent = 350.0;

double q_of(const DispersionPair& d) {
    return (d.xi * d.xi - d.sigma * d.sigma) / (2.0 * d.xi * d.sigma);
}

double r_of(const DispersionPair& d) {
    return (d.xi * d.xi + d.sigma * d.sigma) / (2.0 * d.xi * d.sigma);
}

} // namespace

std::complex<double> transmission_amplitude(const DispersionPair& d, int n) {
    const double kn = d.kappa * static_cast<double>(n);
    const double q = q_of(d);
    const std::complex<double> free_phase =
        std::exp(std::complex<double>(0.0, -d.rho * static_cast<double>(n)));
    if (kn > opaque_exponent) {
        // cosh ~ sinh ~ e^{kn}/2: T ~ 2 e^{-kn} / (1 + i q).
        const std::complex<double> tail =
            2.0 * std::exp(-kn) / std::complex<double>(1.0, q);
        return free_phase * tail;
    }
    return free_phase /
           std::complex<double>(std::cosh(kn), q * std::sinh(kn));
}

double transmission_coefficient(const DispersionPair& d, int n) {
    const double kn = d.kappa * static_cast<double>(n);
    const double r = r_of(d);
    if (kn > opaque_exponent) {
        const double t = 2.0 * std::exp(-kn) / r;
        return t * t;
    }
    // r diverges as eps -> upsilon0 while sinh(kn) -> 0; the product stays
    // bounded, so square after multiplying.
    const double p = r * std::sinh(kn);
    return 1.0 / (1.0 + p * p);
}

double phase_shift(const DispersionPair& d, int n) {
    const double kn = d.kappa * static_cast<double>(n);
    return -std::atan(q_of(d) * std::tanh(kn));
}

double wigner_time(const DispersionPair& d, int n) {
    const double s2 = d.sigma * d.sigma;
    const double x2 = d.xi * d.xi;
    const double sum = x2 + s2;
    const double diff = x2 - s2;
    const double cos_rho = std::cos(d.rho);
    const double cosh_kappa = std::cosh(d.kappa);
    const double mix = (d.xi / d.sigma) * cos_rho + (d.sigma / d.xi) * cosh_kappa;
    const double kn = d.kappa * static_cast<double>(n);
    if (kn > opaque_exponent) {
        // sinh(2kn)/cosh^2(kn) -> 2 and the diff^2 term is negligible.
        return 2.0 * mix / sum;
    }
    const double ch = std::cosh(kn);
    const double sh = std::sinh(kn);
    const double num =
        2.0 * static_cast<double>(n) * d.sigma * diff + sum * mix * std::sinh(2.0 * kn);
    // sum^2 cosh^2 - diff^2 expanded into all-positive terms; the direct
    // form cancels catastrophically as eps -> upsilon0 (xi -> 0, kn -> 0).
    const double den = (s2 * s2 + x2 * x2) * sh * sh +
                       2.0 * s2 * x2 * (ch * ch + 1.0);
    return num / den;
}

namespace {

void require_tunneling_fraction(double epsilon_hat) {
    if (!(epsilon_hat > 0) || !(epsilon_hat < 1)) {
        throw std::domain_error("energy fraction must lie in (0, 1)");
    }
}

} // namespace

double low_energy_correction(double alpha, int n, double epsilon_hat) {
    require_tunneling_fraction(epsilon_hat);
    const double eh = epsilon_hat;
    const double x = std::sqrt(alpha * (1.0 - eh));
    const double sh = std::sinh(x);
    return -(2.0 / 3.0) * (alpha / (static_cast<double>(n) * n)) *
           (eh * eh - (1.0 - eh) * (1.0 - eh)) / (eh * (1.0 - eh)) * sh * sh;
}

double continuum_deviation(double alpha, int n, double epsilon_hat) {
    require_tunneling_fraction(epsilon_hat);
    const double eh = epsilon_hat;
    const double x = std::sqrt(alpha * (1.0 - eh));
    const double sh = std::sinh(x);
    const double ch = std::cosh(x);
    const double tqm = 1.0 / (1.0 + sh * sh / (4.0 * eh * (1.0 - eh)));
    const double bracket = (eh * eh - (1.0 - eh) * (1.0 - eh)) * sh * sh +
                           ((1.0 - eh) * x / 3.0) * sh * ch;
    return tqm * tqm * alpha / (16.0 * eh * (1.0 - eh) * n * n) * bracket;
}

} // namespace polyscat
