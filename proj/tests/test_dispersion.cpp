#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "polyscat/dispersion.hpp"

using namespace polyscat;

TEST_CASE("exterior wavenumber inverts the band dispersion") {
    CHECK(rho_of_epsilon(1.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(rho_of_epsilon(0.02) == doctest::Approx(0.200334842323120).epsilon(1e-13));
    for (double eps : {1e-6, 0.3, 1.0, 1.7, 1.999}) {
        CHECK(1.0 - std::cos(rho_of_epsilon(eps)) == doctest::Approx(eps).epsilon(1e-12));
    }
}

TEST_CASE("band edges are refused") {
    CHECK_THROWS_AS(rho_of_epsilon(0.0), band_error);
    CHECK_THROWS_AS(rho_of_epsilon(2.0), band_error);
    CHECK_THROWS_AS(rho_of_epsilon(5e-10), band_error);
    CHECK_THROWS_AS(rho_of_epsilon(2.0 - 5e-10), band_error);
    CHECK_THROWS_AS(rho_of_epsilon(-0.3), band_error);
    CHECK_NOTHROW(rho_of_epsilon(2e-9));
}

TEST_CASE("evanescent rate inverts its dispersion, log form stays exact") {
    // cosh(kappa) = 2 at one unit below the barrier: kappa = ln(2 + sqrt(3)).
    CHECK(kappa_of_epsilon(1.0, 2.0) ==
          doctest::Approx(1.316957896924817).epsilon(1e-14));
    // Tiny barrier margin: kappa ~ sqrt(2u) without cancellation.  Pick a
    // u exactly representable next to 1 so that (1+u) - 1 == u, and invert
    // through expm1 so the comparison itself stays cancellation-free:
    // cosh(kappa) - 1 = (expm1(kappa) + expm1(-kappa)) / 2.
    const double u = std::ldexp(1.0, -26);
    const double kappa = kappa_of_epsilon(1.0, 1.0 + u);
    const double recovered = 0.5 * (std::expm1(kappa) + std::expm1(-kappa));
    CHECK(std::abs(recovered - u) < 1e-13 * u);
}

TEST_CASE("above-barrier energies are a different regime") {
    CHECK_THROWS_AS(kappa_of_epsilon(1.0, 1.0), regime_error);
    CHECK_THROWS_AS(kappa_of_epsilon(1.5, 1.0), regime_error);
    CHECK_THROWS_AS(DispersionPair::at(1.5, 1.0), regime_error);
}

TEST_CASE("dispersion pair is internally consistent") {
    for (double u0 : {0.5, 1.0, 2.0}) {
        for (double frac : {0.01, 0.3, 0.7, 0.99}) {
            const double eps = frac * std::min(u0, 1.9);
            const DispersionPair d = DispersionPair::at(eps, u0);
            CHECK(d.sigma == doctest::Approx(std::sin(d.rho)).epsilon(1e-13));
            CHECK(d.xi == doctest::Approx(std::sinh(d.kappa)).epsilon(1e-13));
            // sigma^2 + cos^2(rho) = 1
            CHECK(d.sigma * d.sigma + (1 - eps) * (1 - eps) ==
                  doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("lattice wavenumber approaches the continuum one as n grows") {
    // k L = n rho(eps_n) with eps_n = alpha ehat / (2 n^2) must tend to
    // Y = sqrt(alpha ehat), with an O(1/n^2) defect.
    const double alpha = 8.5;
    const double ehat = 0.4;
    const double y = std::sqrt(alpha * ehat);
    auto defect = [&](int n) {
        const double eps = alpha * ehat / (2.0 * n * n);
        return std::abs(n * rho_of_epsilon(eps) - y);
    };
    CHECK(defect(200) < defect(100));
    CHECK(defect(100) / defect(200) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("electron scenario reduces to the reference numbers") {
    PhysicalScenario sc;
    sc.mass_kg = default_constants().electron_mass_kg;
    sc.barrier_height_ev = 10.0;
    sc.barrier_width_m = 1.8e-10;
    sc.n = 100;
    sc.validate();
    CHECK(sc.alpha() == doctest::Approx(8.503976935304671).epsilon(1e-12));
    CHECK(sc.upsilon0() == doctest::Approx(4.2519884676523356e-4).epsilon(1e-12));
    CHECK(sc.lattice_spacing_m() == doctest::Approx(1.8e-12).epsilon(1e-12));
    CHECK(sc.time_unit_s() == doctest::Approx(2.7987096485e-20).epsilon(1e-9));
    // Band top expressed in E/U0 units times upsilon0 is the band top itself.
    CHECK(sc.epsilon_hat_max() * sc.upsilon0() == doctest::Approx(2.0).epsilon(1e-13));

    sc.n = 2;
    CHECK(sc.upsilon0() == doctest::Approx(1.0629971169130839).epsilon(1e-12));
    CHECK(sc.epsilon_hat_max() == doctest::Approx(1.881472647647388).epsilon(1e-12));
}

TEST_CASE("scenario and system validation reject nonsense") {
    PhysicalScenario sc;
    sc.mass_kg = -1;
    sc.barrier_height_ev = 10;
    sc.barrier_width_m = 1e-10;
    sc.n = 10;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc.mass_kg = 9.1e-31;
    sc.n = 0;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc.n = 10;
    CHECK_NOTHROW(sc.validate());
    CHECK_THROWS_AS(sc.system(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sc.system(1, 0), std::invalid_argument);
    BarrierSystem bad{-1.0, 2, 1, 1};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("constants load from JSON with strict keys") {
    const char* path = "constants_test.json";
    {
        std::ofstream f(path);
        f << R"({"hbar_js": 1.0e-34, "ev_joule": 1.6e-19})";
    }
    const PhysicalConstants c = load_constants(path);
    CHECK(c.hbar_js == doctest::Approx(1.0e-34).epsilon(1e-15));
    CHECK(c.ev_joule == doctest::Approx(1.6e-19).epsilon(1e-15));
    // untouched key keeps its default
    CHECK(c.electron_mass_kg == doctest::Approx(9.1093837015e-31).epsilon(1e-15));

    {
        std::ofstream f(path);
        f << R"({"hbar": 1.0e-34})"; // misspelled key must not be ignored
    }
    CHECK_THROWS_AS(load_constants(path), std::runtime_error);
    {
        std::ofstream f(path);
        f << R"({"hbar_js": -1.0})";
    }
    CHECK_THROWS_AS(load_constants(path), std::runtime_error);
    CHECK_THROWS_AS(load_constants("no_such_file.json"), std::runtime_error);
    std::remove(path);
}
