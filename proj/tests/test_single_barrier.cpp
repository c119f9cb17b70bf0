#include <doctest.h>

#include <cmath>
#include <complex>

#include "polyscat/deriv.hpp"
#include "polyscat/single_barrier.hpp"

using namespace polyscat;

namespace {
constexpr double alpha_ref = 8.503976935304671; // electron, 10 eV, 1.8e-10 m
}

TEST_CASE("hand-checked point: u0 = 2, n = 1, eps = 1") {
    // sigma = 1, xi = sqrt(3): q = 1, r = 2, sinh(kappa) = sqrt(3):
    // T amplitude = e^{-i pi/2} / (2 + i sqrt(3) / sqrt(3) * ...) reduces to
    // |T|^2 = 1/(1 + 4*3/4) = 1/5, delta = -arctan(1/2), tau = 36/60.
    const DispersionPair d = DispersionPair::at(1.0, 2.0);
    CHECK(std::abs(transmission_coefficient(d, 1) - 0.2) < 1e-15);
    CHECK(std::abs(phase_shift(d, 1) + std::atan(0.5)) < 1e-15);
    CHECK(std::abs(wigner_time(d, 1) - 0.6) < 1e-13);
    const std::complex<double> amp = transmission_amplitude(d, 1);
    CHECK(std::abs(std::norm(amp) - 0.2) < 1e-15);
    // exact amplitude: -i/(2 + i) * ... = e^{-i rho}/(2 + i)
    const std::complex<double> expected =
        std::complex<double>(0.0, -1.0) / std::complex<double>(2.0, 1.0);
    CHECK(std::abs(amp - expected) < 1e-15);
}

TEST_CASE("a second exact rational point: u0 = 2, n = 1, eps = 1.9") {
    // (sigma^2 + xi^2)^2 / (4 sigma^2) = 0.16/0.76 = 4/19: T = 19/23.
    const DispersionPair d = DispersionPair::at(1.9, 2.0);
    CHECK(transmission_coefficient(d, 1) ==
          doctest::Approx(19.0 / 23.0).epsilon(1e-14));
}

TEST_CASE("frozen spot values") {
    const DispersionPair d = DispersionPair::at(0.5, 1.0);
    CHECK(transmission_coefficient(d, 5) ==
          doctest::Approx(2.4787242832355615e-4).epsilon(1e-13));
    CHECK(phase_shift(d, 5) ==
          doctest::Approx(-0.25264825309815481).epsilon(1e-13));
    CHECK(wigner_time(d, 5) ==
          doctest::Approx(1.8074693629343896).epsilon(1e-13));
    const DispersionPair d2 = DispersionPair::at(0.3, 0.5);
    CHECK(transmission_coefficient(d2, 2) ==
          doctest::Approx(0.28183023872679058).epsilon(1e-13));
}

TEST_CASE("coefficient equals squared amplitude") {
    for (double u0 : {0.5, 1.0, 2.0}) {
        for (int n : {1, 3, 8}) {
            for (double frac : {0.05, 0.4, 0.95}) {
                const double eps = frac * std::min(u0, 1.95);
                const DispersionPair d = DispersionPair::at(eps, u0);
                CHECK(transmission_coefficient(d, n) ==
                      doctest::Approx(std::norm(transmission_amplitude(d, n)))
                          .epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("phase equals the amplitude argument relative to free motion") {
    for (double frac : {0.1, 0.5, 0.9}) {
        const double eps = frac * 0.9;
        const DispersionPair d = DispersionPair::at(eps, 1.0);
        const std::complex<double> amp = transmission_amplitude(d, 4);
        const std::complex<double> free_phase =
            std::exp(std::complex<double>(0.0, d.rho * 4.0));
        CHECK(phase_shift(d, 4) ==
              doctest::Approx(std::arg(amp * free_phase)).epsilon(1e-12));
    }
}

TEST_CASE("transmission decreases with barrier width") {
    const DispersionPair d = DispersionPair::at(0.4, 1.2);
    double prev = 1.0;
    for (int n = 1; n <= 12; ++n) {
        const double t = transmission_coefficient(d, n);
        CHECK(t < prev);
        CHECK(t > 0.0);
        prev = t;
    }
}

TEST_CASE("closed-form time equals the numerical phase derivative") {
    for (double u0 : {0.5, 2.0}) {
        for (int n : {1, 5, 20}) {
            for (double frac : {0.1, 0.5, 0.9}) {
                const double eps = frac * 0.95 * std::min(u0, band_top);
                const DispersionPair d = DispersionPair::at(eps, u0);
                const double closed = wigner_time(d, n);
                double h = std::min({1e-5 * eps, 0.125 * (u0 - eps), 0.125 * eps});
                const double numeric = phase_derivative(
                    [&](double e) {
                        return phase_shift(DispersionPair::at(e, u0), n);
                    },
                    eps, h);
                CHECK(closed == doctest::Approx(numeric).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("opaque barriers degrade gracefully instead of overflowing") {
    // kappa * n ~ 680: cosh would overflow; amplitude underflows smoothly.
    const DispersionPair d = DispersionPair::at(0.1, 2.0);
    const double t = transmission_coefficient(d, 400);
    CHECK(std::isfinite(t));
    CHECK(t >= 0.0);
    CHECK(t < 1e-250);
    CHECK(std::isfinite(phase_shift(d, 400)));
    CHECK(std::isfinite(wigner_time(d, 400)));
    const std::complex<double> amp = transmission_amplitude(d, 400);
    CHECK(std::isfinite(amp.real()));
    CHECK(std::isfinite(amp.imag()));
    // continuity across the asymptotic switch: the guarded and direct
    // branches must agree where both are representable (kn straddling 350).
    const double k_per_site = d.kappa;
    const int n_lo = static_cast<int>(349.5 / k_per_site);
    const int n_hi = n_lo + 1;
    const double ratio = transmission_coefficient(d, n_hi) /
                         transmission_coefficient(d, n_lo);
    CHECK(ratio == doctest::Approx(std::exp(-2.0 * k_per_site)).epsilon(1e-6));
}

TEST_CASE("documented low-energy correction formula") {
    // Vanishes exactly at eh = 1/2 and is positive below it.
    CHECK(low_energy_correction(alpha_ref, 100, 0.5) == 0.0);
    CHECK(low_energy_correction(alpha_ref, 400, 0.3) ==
          doctest::Approx(2.186640e-3).epsilon(1e-5));
    // 1/n^2 scaling
    CHECK(low_energy_correction(alpha_ref, 100, 0.3) ==
          doctest::Approx(16.0 * low_energy_correction(alpha_ref, 400, 0.3))
              .epsilon(1e-12));
    CHECK_THROWS_AS(low_energy_correction(alpha_ref, 100, 1.5), std::domain_error);
}

TEST_CASE("derived deviation reproduces the measured lattice-continuum gap") {
    // T_lattice - T_continuum over the derived second-order expression
    // tends to 1; at n = 400 it is within 1e-4 of 1 on both sides of 1/2.
    const int n = 400;
    const double u0 = alpha_ref / (2.0 * n * n);
    for (double eh : {0.2, 0.3, 0.7, 0.8}) {
        const DispersionPair d = DispersionPair::at(u0 * eh, u0);
        const double t_lat = transmission_coefficient(d, n);
        const double sh = std::sinh(std::sqrt(alpha_ref * (1.0 - eh)));
        const double t_qm = 1.0 / (1.0 + sh * sh / (4.0 * eh * (1.0 - eh)));
        const double ratio =
            (t_lat - t_qm) / continuum_deviation(alpha_ref, n, eh);
        CHECK(ratio == doctest::Approx(1.0).epsilon(1e-3));
    }
}
