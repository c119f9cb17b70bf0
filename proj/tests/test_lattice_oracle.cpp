#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "polyscat/lattice_oracle.hpp"
#include "polyscat/single_barrier.hpp"
#include "polyscat/transfer_matrix.hpp"

using namespace polyscat;

namespace {

using cplx = std::complex<double>;

// Independent dense reference: assemble the same scattering equations into a
// full matrix and solve by Gaussian elimination with partial pivoting.
struct DenseSolution {
    cplx reflection, transmission;
    std::vector<cplx> psi;
};

DenseSolution dense_solve(const PotentialProfile& profile, double epsilon) {
    const double rho = rho_of_epsilon(epsilon);
    const int w = profile.last_site();
    const int m = w + 3;
    std::vector<std::vector<cplx>> a(static_cast<std::size_t>(m),
                                     std::vector<cplx>(static_cast<std::size_t>(m), cplx{0, 0}));
    std::vector<cplx> b(static_cast<std::size_t>(m), cplx{0, 0});
    auto phase = [&](double mu) { return std::exp(cplx(0.0, rho * mu)); };
    auto c_of = [&](int mu) {
        return cplx(2.0 * (1.0 - (epsilon - profile.site_value[static_cast<std::size_t>(mu)])), 0.0);
    };
    a[0][0] = -1.0;
    a[0][1] = 1.0;
    b[0] = 1.0;
    for (int mu = 0; mu <= w; ++mu) {
        const std::size_t row = static_cast<std::size_t>(mu) + 1;
        a[row][row] = -c_of(mu);
        if (mu == 0) {
            a[row][0] = phase(1.0);
            b[row] = -phase(-1.0);
        } else {
            a[row][row - 1] = 1.0;
        }
        if (mu == w) {
            a[row][static_cast<std::size_t>(m) - 1] = phase(w + 1.0);
        } else {
            a[row][row + 1] = 1.0;
        }
    }
    a[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(m) - 2] = 1.0;
    a[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(m) - 1] = -phase(static_cast<double>(w));

    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)])) {
                pivot = r;
            }
        }
        std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
        std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(pivot)]);
        for (int r = col + 1; r < m; ++r) {
            const cplx f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                           a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (int cc = col; cc < m; ++cc) {
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -=
                    f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(cc)];
            }
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    for (int r = m - 1; r >= 0; --r) {
        cplx acc = b[static_cast<std::size_t>(r)];
        for (int cc = r + 1; cc < m; ++cc) {
            acc -= a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] * b[static_cast<std::size_t>(cc)];
        }
        b[static_cast<std::size_t>(r)] = acc / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
    }
    DenseSolution s;
    s.reflection = b[0];
    s.transmission = b[static_cast<std::size_t>(m) - 1];
    s.psi.assign(b.begin() + 1, b.end() - 1);
    return s;
}

} // namespace

TEST_CASE("free lattice transmits everything") {
    PotentialProfile flat;
    flat.site_value.assign(11, 0.0);
    for (double eps : {0.2, 1.0, 1.8}) {
        const OracleSolution sol = solve_scattering(flat, eps);
        CHECK(std::abs(sol.transmission - cplx(1.0, 0.0)) < 1e-12);
        CHECK(std::abs(sol.reflection) < 1e-12);
        CHECK(sol.residual < 1e-13);
    }
}

TEST_CASE("hand-checked point through the lattice solve") {
    const PotentialProfile p = barrier_profile(2.0, 1);
    // half-height edges: both sites carry upsilon0/2
    CHECK(p.site_value == std::vector<double>{1.0, 1.0});
    const OracleSolution sol = solve_scattering(p, 1.0);
    CHECK(sol.transmission_coefficient() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(sol.reflection_coefficient() == doctest::Approx(0.8).epsilon(1e-12));
    const cplx expected = cplx(0.0, -1.0) / cplx(2.0, 1.0);
    CHECK(std::abs(sol.transmission - expected) < 1e-12);
}

TEST_CASE("closed form and lattice solve agree over a parameter grid") {
    for (double u0 : {0.5, 2.0}) {
        for (int n : {1, 5, 20}) {
            const PotentialProfile p = barrier_profile(u0, n);
            for (int i = 0; i < 20; ++i) {
                const double eps =
                    (0.03 + 0.94 * i / 19.0) * std::min(u0, band_top - 1e-3);
                const DispersionPair d = DispersionPair::at(eps, u0);
                const OracleSolution sol = solve_scattering(p, eps);
                CHECK(std::abs(transmission_coefficient(d, n) -
                               sol.transmission_coefficient()) < 1e-12);
                // amplitude too, propagation phase included
                CHECK(std::abs(transmission_amplitude(d, n) - sol.transmission) <
                      1e-11);
                CHECK(std::abs(sol.transmission_coefficient() +
                               sol.reflection_coefficient() - 1.0) < 1e-12);
                CHECK(sol.residual < 1e-12);
            }
        }
    }
}

TEST_CASE("full-height endpoints are measurably the wrong convention") {
    double worst = 0;
    const PotentialProfile p = barrier_profile(2.0, 2, EdgeConvention::full_height);
    for (int i = 0; i < 20; ++i) {
        const double eps = 0.1 + 1.7 * i / 19.0;
        const DispersionPair d = DispersionPair::at(eps, 2.0);
        const OracleSolution sol = solve_scattering(p, eps);
        worst = std::max(worst, std::abs(transmission_coefficient(d, 2) -
                                         sol.transmission_coefficient()));
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("banded solver agrees with a dense elimination on random profiles") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> height(0.0, 1.5);
    for (int w : {0, 1, 2, 7, 23}) {
        PotentialProfile p;
        p.site_value.resize(static_cast<std::size_t>(w) + 1);
        for (double& v : p.site_value) {
            v = height(rng);
        }
        for (double eps : {0.3, 1.2, 1.9}) {
            const OracleSolution fast = solve_scattering(p, eps);
            const DenseSolution ref = dense_solve(p, eps);
            CHECK(std::abs(fast.reflection - ref.reflection) < 1e-12);
            CHECK(std::abs(fast.transmission - ref.transmission) < 1e-12);
            REQUIRE(fast.psi.size() == ref.psi.size());
            for (std::size_t i = 0; i < ref.psi.size(); ++i) {
                CHECK(std::abs(fast.psi[i] - ref.psi[i]) < 1e-12);
            }
        }
    }
}

TEST_CASE("transmission is reciprocal for asymmetric profiles") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> height(0.0, 1.2);
    PotentialProfile p;
    p.site_value.resize(17);
    for (double& v : p.site_value) {
        v = height(rng);
    }
    PotentialProfile reversed = p;
    std::reverse(reversed.site_value.begin(), reversed.site_value.end());
    for (double eps : {0.4, 0.9, 1.6}) {
        const double fwd = solve_scattering(p, eps).transmission_coefficient();
        const double bwd = solve_scattering(reversed, eps).transmission_coefficient();
        CHECK(fwd == doctest::Approx(bwd).epsilon(1e-12));
    }
}

TEST_CASE("above-barrier energies just work in the direct solve") {
    const PotentialProfile p = barrier_profile(0.5, 4);
    const OracleSolution sol = solve_scattering(p, 1.5);
    CHECK(sol.transmission_coefficient() > 0.5);
    CHECK(std::abs(sol.transmission_coefficient() +
                   sol.reflection_coefficient() - 1.0) < 1e-12);
    CHECK(sol.residual < 1e-12);
}

TEST_CASE("inputs outside the band or empty profiles are refused") {
    const PotentialProfile p = barrier_profile(1.0, 3);
    CHECK_THROWS_AS(solve_scattering(p, 0.0), band_error);
    CHECK_THROWS_AS(solve_scattering(p, 2.0), band_error);
    CHECK_THROWS_AS(solve_scattering(PotentialProfile{}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(barrier_profile(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(barrier_train_profile(BarrierSystem{1.0, 2, 1, 2}, 0),
                    std::invalid_argument);
}

TEST_CASE("gap parameter one fuses barriers into one thick barrier") {
    const BarrierSystem sys{0.8, 3, 1, 2};
    const PotentialProfile train = barrier_train_profile(sys, matched_period(sys));
    const PotentialProfile thick = barrier_profile(0.8, 6);
    CHECK(train.site_value == thick.site_value);
}

TEST_CASE("the composed closed form singles out the n+m-1 period") {
    const double u0 = 1.0629971169130839; // electron scenario, n = 2
    const BarrierSystem sys{u0, 2, 2, 2};
    CHECK(matched_period(sys) == 3);
    const PotentialProfile matched = barrier_train_profile(sys, 3);
    const PotentialProfile off_by_one = barrier_train_profile(sys, 4);
    double dev_matched = 0;
    double dev_off = 0;
    for (int i = 0; i < 25; ++i) {
        const double eps = u0 * (0.05 + 0.9 * i / 24.0);
        const DispersionPair d = DispersionPair::at(eps, u0);
        const double closed = transmission_multi(d, sys);
        dev_matched = std::max(dev_matched,
                               std::abs(closed - solve_scattering(matched, eps)
                                                     .transmission_coefficient()));
        dev_off = std::max(dev_off,
                           std::abs(closed - solve_scattering(off_by_one, eps)
                                                 .transmission_coefficient()));
    }
    CHECK(dev_matched < 1e-10);
    CHECK(dev_off > 1e-3);
}

TEST_CASE("train profiles reproduce the composed closed form with phases") {
    const double u0 = 1.0629971169130839;
    const BarrierSystem sys{u0, 2, 2, 3};
    const PotentialProfile train = barrier_train_profile(sys, matched_period(sys));
    for (int i = 0; i < 15; ++i) {
        const double eps = u0 * (0.08 + 0.85 * i / 14.0);
        const DispersionPair d = DispersionPair::at(eps, u0);
        const OracleSolution sol = solve_scattering(train, eps);
        CHECK(std::abs(transmission_multi(d, sys) -
                       sol.transmission_coefficient()) < 1e-11);
        // transmitted amplitude from the composed matrix: t = 1/conj(t11)
        const TransferMatrix tn = n_barrier_matrix(d, sys);
        const cplx amp = 1.0 / std::conj(tn.t11);
        CHECK(std::abs(amp - sol.transmission) < 1e-11);
        CHECK(std::abs(sol.transmission_coefficient() +
                       sol.reflection_coefficient() - 1.0) < 1e-12);
    }
}
