#include "polyscat/transfer_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "polyscat/deriv.hpp"
#include "polyscat/single_barrier.hpp"

namespace polyscat {

TransferMatrix TransferMatrix::operator*(const TransferMatrix& rhs) const {
    return TransferMatrix{
        t11 * rhs.t11 + t12 * rhs.t21,
        t11 * rhs.t12 + t12 * rhs.t22,
        t21 * rhs.t11 + t22 * rhs.t21,
        t21 * rhs.t12 + t22 * rhs.t22,
    };
}

TransferMatrix single_barrier_matrix(const DispersionPair& d, int n) {
    const double kn = d.kappa * static_cast<double>(n);
    const double s2 = d.sigma * d.sigma;
    const double x2 = d.xi * d.xi;
    const double two_sx = 2.0 * d.sigma * d.xi;
    const double sh = std::sinh(kn);
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, -d.rho * static_cast<double>(n)));
    const std::complex<double> t11 =
        std::complex<double>(std::cosh(kn), (s2 - x2) / two_sx * sh) * phase;
    const std::complex<double> t12 =
        std::complex<double>(0.0, -(s2 + x2) / two_sx * sh) * phase;
    return TransferMatrix{t11, t12, std::conj(t12), std::conj(t11)};
}

int cell_period(const BarrierSystem& sys) { return sys.n + sys.m - 1; }

CellMatrix cell_matrix(const DispersionPair& d, const BarrierSystem& sys) {
    sys.validate();
    const TransferMatrix t1 = single_barrier_matrix(d, sys.n);
    const double span = d.rho * static_cast<double>(cell_period(sys));
    const std::complex<double> f11 = std::exp(std::complex<double>(0.0, span));
    CellMatrix c;
    c.f22 = std::conj(f11);
    c.g11 = t1.t11 * f11;
    c.g12 = t1.t12 * c.f22;
    c.g = c.g11.real();
    return c;
}

ChebyshevPair chebyshev_pair(double g, int count) {
    if (count < 1) {
        throw std::invalid_argument("barrier count must be at least 1");
    }
    // Near |g| = 1 both closed forms are 0/0; the recurrence is exact there
    // and loses nothing for small N.
    constexpr double closed_form_margin = 1e-8;
    ChebyshevPair p{1.0, 0.0, ChebyshevBranch::recurrence};
    if (count == 1) {
        p.branch = std::abs(g) < 1.0 ? ChebyshevBranch::oscillatory
                                     : ChebyshevBranch::hyperbolic;
        return p;
    }
    if (std::abs(g) < 1.0 - closed_form_margin) {
        const double theta = std::acos(g);
        const double s = std::sin(theta);
        p.u_last = std::sin(count * theta) / s;
        p.u_prev = std::sin((count - 1) * theta) / s;
        p.branch = ChebyshevBranch::oscillatory;
        return p;
    }
    if (std::abs(g) > 1.0 + closed_form_margin) {
        // U_{N-1}(-x) = (-1)^{N-1} U_{N-1}(x) extends the g > 1 form.
        const double sign = g > 0 ? 1.0 : -1.0;
        const double phi = std::acosh(std::abs(g));
        const double s = std::sinh(phi);
        const double parity_last = (count % 2 == 0) ? sign : 1.0;
        const double parity_prev = (count % 2 == 0) ? 1.0 : sign;
        p.u_last = parity_last * std::sinh(count * phi) / s;
        p.u_prev = parity_prev * std::sinh((count - 1) * phi) / s;
        p.branch = ChebyshevBranch::hyperbolic;
        return p;
    }
    double prev = 0.0; // U_{-1}
    double last = 1.0; // U_0
    for (int k = 1; k < count; ++k) {
        const double next = 2.0 * g * last - prev;
        prev = last;
        last = next;
    }
    p.u_last = last;
    p.u_prev = prev;
    return p;
}

TransferMatrix n_barrier_matrix(const DispersionPair& d,
                                const BarrierSystem& sys) {
    const CellMatrix c = cell_matrix(d, sys);
    const ChebyshevPair u = chebyshev_pair(c.g, sys.count);
    const std::complex<double> f22_pow =
        std::exp(std::complex<double>(0.0, -d.rho * static_cast<double>(cell_period(sys)) *
                                               static_cast<double>(sys.count)));
    const std::complex<double> t11 = f22_pow * (c.g11 * u.u_last - u.u_prev);
    const std::complex<double> t12 = f22_pow * c.g12 * u.u_last;
    return TransferMatrix{t11, t12, std::conj(t12), std::conj(t11)};
}

double transmission_multi(const DispersionPair& d, const BarrierSystem& sys) {
    const CellMatrix c = cell_matrix(d, sys);
    const ChebyshevPair u = chebyshev_pair(c.g, sys.count);
    const double p = std::abs(c.g12) * u.u_last;
    return 1.0 / (1.0 + p * p);
}

double phase_shift_multi(const DispersionPair& d, const BarrierSystem& sys) {
    const CellMatrix c = cell_matrix(d, sys);
    const ChebyshevPair u = chebyshev_pair(c.g, sys.count);
    return std::atan2(u.u_last * c.g11.imag(),
                      u.u_last * c.g11.real() - u.u_prev);
}

double transmission_multi_at(const BarrierSystem& sys, double epsilon) {
    return transmission_multi(DispersionPair::at(epsilon, sys.upsilon0), sys);
}

double phase_shift_multi_at(const BarrierSystem& sys, double epsilon) {
    return phase_shift_multi(DispersionPair::at(epsilon, sys.upsilon0), sys);
}

double wigner_time_multi(const BarrierSystem& sys, double epsilon) {
    // Step small relative to the energy but clear of both regime edges so
    // the widest stencil sample stays evaluable.
    double h = 1e-5 * epsilon;
    h = std::min(h, 0.125 * (sys.upsilon0 - epsilon));
    h = std::min(h, 0.125 * (band_top - epsilon));
    h = std::min(h, 0.125 * epsilon);
    return phase_derivative(
        [&](double e) { return phase_shift_multi_at(sys, e); }, epsilon, h);
}

} // namespace polyscat
