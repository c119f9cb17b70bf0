#include "polyscat/lattice_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace polyscat {

namespace {

using cplx = std::complex<double>;

// LU with partial pivoting specialized to a tridiagonal matrix: row swaps
// introduce at most one extra superdiagonal, so the factorization stays in
// four bands and O(M) time. Solves in place; throws on exact singularity.
void solve_tridiagonal_pivot(std::vector<cplx>& sub, std::vector<cplx>& diag,
                             std::vector<cplx>& sup1, std::vector<cplx>& rhs) {
    const std::size_t m = diag.size();
    std::vector<cplx> sup2(m, cplx{0.0, 0.0});
    for (std::size_t k = 0; k + 1 < m; ++k) {
        if (std::abs(sub[k + 1]) > std::abs(diag[k])) {
            std::swap(diag[k], sub[k + 1]);
            std::swap(sup1[k], diag[k + 1]);
            std::swap(sup2[k], sup1[k + 1]);
            std::swap(rhs[k], rhs[k + 1]);
        }
        if (diag[k] == cplx{0.0, 0.0}) {
            throw std::runtime_error("singular scattering system");
        }
        const cplx factor = sub[k + 1] / diag[k];
        diag[k + 1] -= factor * sup1[k];
        sup1[k + 1] -= factor * sup2[k];
        rhs[k + 1] -= factor * rhs[k];
    }
    if (diag[m - 1] == cplx{0.0, 0.0}) {
        throw std::runtime_error("singular scattering system");
    }
    rhs[m - 1] /= diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        cplx acc = rhs[i] - sup1[i] * rhs[i + 1];
        if (i + 2 < m) {
            acc -= sup2[i] * rhs[i + 2];
        }
        rhs[i] = acc / diag[i];
    }
}

} // namespace

PotentialProfile barrier_profile(double upsilon0, int n, EdgeConvention edge) {
    if (!(upsilon0 > 0) || n < 1) {
        throw std::invalid_argument("barrier profile needs upsilon0 > 0, n >= 1");
    }
    PotentialProfile p;
    p.site_value.assign(static_cast<std::size_t>(n) + 1, upsilon0);
    if (edge == EdgeConvention::half_height) {
        p.site_value.front() = 0.5 * upsilon0;
        p.site_value.back() = 0.5 * upsilon0;
    }
    return p;
}

PotentialProfile barrier_train_profile(const BarrierSystem& sys, int period,
                                       EdgeConvention edge) {
    sys.validate();
    if (period < 1) {
        throw std::invalid_argument("period must be at least one site");
    }
    const PotentialProfile one = barrier_profile(sys.upsilon0, sys.n, edge);
    const int last = (sys.count - 1) * period + sys.n;
    PotentialProfile p;
    p.site_value.assign(static_cast<std::size_t>(last) + 1, 0.0);
    for (int k = 0; k < sys.count; ++k) {
        const int base = k * period;
        for (int s = 0; s <= sys.n; ++s) {
            p.site_value[static_cast<std::size_t>(base + s)] += one.site_value[static_cast<std::size_t>(s)];
        }
    }
    return p;
}

int matched_period(const BarrierSystem& sys) { return sys.n + sys.m - 1; }

OracleSolution solve_scattering(const PotentialProfile& profile, double epsilon) {
    if (profile.site_value.empty()) {
        throw std::invalid_argument("empty potential profile");
    }
    const double rho = rho_of_epsilon(epsilon);
    const int w = profile.last_site();
    const std::size_t m = static_cast<std::size_t>(w) + 3; // R, psi_0..psi_W, T

    auto phase = [&](double mu) { return std::exp(cplx(0.0, rho * mu)); };
    auto c_of = [&](int mu) {
        return cplx(2.0 * (1.0 - (epsilon - profile.site_value[static_cast<std::size_t>(mu)])), 0.0);
    };

    // Unknown ordering z = (R, psi_0..psi_W, T) makes every equation couple
    // only neighbouring unknowns:
    //   row 0:        psi_0 - R = 1                       (psi_0 = 1 + R)
    //   row 1:        e^{i rho} R - c_0 psi_0 + psi_1 = -e^{-i rho}
    //   row mu+1:     psi_{mu-1} - c_mu psi_mu + psi_{mu+1} = 0
    //   row W+1:      psi_{W-1} - c_W psi_W + e^{i rho (W+1)} T = 0
    //   row W+2:      psi_W - e^{i rho W} T = 0            (psi_W = T e^{i rho W})
    std::vector<cplx> sub(m), diag(m), sup1(m), rhs(m);

    diag[0] = cplx(-1.0, 0.0);
    sup1[0] = cplx(1.0, 0.0);
    rhs[0] = cplx(1.0, 0.0);

    sub[1] = phase(1.0);
    diag[1] = -c_of(0);
    sup1[1] = cplx(1.0, 0.0);
    rhs[1] = -phase(-1.0);

    for (int mu = 1; mu < w; ++mu) {
        const std::size_t row = static_cast<std::size_t>(mu) + 1;
        sub[row] = cplx(1.0, 0.0);
        diag[row] = -c_of(mu);
        sup1[row] = cplx(1.0, 0.0);
        rhs[row] = cplx(0.0, 0.0);
    }

    if (w >= 1) {
        const std::size_t row = static_cast<std::size_t>(w) + 1;
        sub[row] = cplx(1.0, 0.0);
        diag[row] = -c_of(w);
        sup1[row] = phase(static_cast<double>(w) + 1.0);
        rhs[row] = cplx(0.0, 0.0);
    } else {
        // Single-site profile: the site-0 equation already written in row 1
        // must use the right-lead extension instead of psi_1.
        sub[1] = phase(1.0);
        diag[1] = -c_of(0);
        sup1[1] = phase(1.0);
        rhs[1] = -phase(-1.0);
    }

    sub[m - 1] = cplx(1.0, 0.0);
    diag[m - 1] = -phase(static_cast<double>(w));
    rhs[m - 1] = cplx(0.0, 0.0);

    solve_tridiagonal_pivot(sub, diag, sup1, rhs);

    OracleSolution sol;
    sol.reflection = rhs[0];
    sol.transmission = rhs[m - 1];
    sol.psi.assign(rhs.begin() + 1, rhs.end() - 1);

    // Defect of every equation, exterior extensions included.
    const cplx psi_left = phase(-1.0) + sol.reflection * phase(1.0);
    const cplx psi_right = sol.transmission * phase(static_cast<double>(w) + 1.0);
    double res = std::abs(sol.psi[0] - sol.reflection - cplx(1.0, 0.0));
    res = std::max(res, std::abs(sol.psi[static_cast<std::size_t>(w)] -
                                 sol.transmission * phase(static_cast<double>(w))));
    for (int mu = 0; mu <= w; ++mu) {
        const cplx left = (mu == 0) ? psi_left : sol.psi[static_cast<std::size_t>(mu) - 1];
        const cplx right = (mu == w) ? psi_right : sol.psi[static_cast<std::size_t>(mu) + 1];
        res = std::max(res, std::abs(right + left - c_of(mu) * sol.psi[static_cast<std::size_t>(mu)]));
    }
    sol.residual = res;
    return sol;
}

} // namespace polyscat
