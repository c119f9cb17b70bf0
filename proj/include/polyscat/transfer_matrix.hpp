#pragma once

#include <complex>

#include "polyscat/dispersion.hpp"

namespace polyscat {

/// 2x2 complex transfer matrix mapping (right-moving, left-moving) amplitudes
/// on the left of a scatterer to those on its right. Flux conservation makes
/// det = 1 and t22 = conj(t11), t21 = conj(t12).
struct TransferMatrix {
    std::complex<double> t11, t12, t21, t22;

    std::complex<double> det() const { return t11 * t22 - t12 * t21; }
    TransferMatrix operator*(const TransferMatrix& rhs) const;
};

/// Single-barrier transfer matrix:
///   t11 = [cosh(kappa n) + i (sigma^2 - xi^2)/(2 sigma xi) sinh(kappa n)]
///         * e^{-i rho n},
///   t12 = -i (sigma^2 + xi^2)/(2 sigma xi) sinh(kappa n) e^{-i rho n},
/// t21, t22 by conjugation.
TransferMatrix single_barrier_matrix(const DispersionPair& d, int n);

/// Number of lattice sites advanced per repeated cell: n + m - 1.
/// This is the free-propagation span that makes the composed closed form
/// agree with a direct lattice solve (see the oracle tests): consecutive
/// barrier edge sites sit m - 1 free sites apart, and m = 1 merges
/// neighbouring barriers into one thick barrier.
int cell_period(const BarrierSystem& sys);

/// One period of the barrier train: G = T1 * F with
/// F = diag(e^{i rho P}, e^{-i rho P}), P = cell_period.
/// Only the first row and the Chebyshev argument are needed downstream.
struct CellMatrix {
    std::complex<double> g11, g12;
    std::complex<double> f22; ///< e^{-i rho P}
    double g;                 ///< Re(g11); det G = 1 makes this the trace/2
};

CellMatrix cell_matrix(const DispersionPair& d, const BarrierSystem& sys);

/// Which formula evaluated the Chebyshev pair.
enum class ChebyshevBranch {
    oscillatory, ///< |g| < 1: sin(N theta)/sin(theta)
    hyperbolic,  ///< |g| > 1: sign-corrected sinh(N phi)/sinh(phi)
    recurrence   ///< |g| within 1e-8 of 1: three-term recurrence
};

/// U_{N-1}(g) and U_{N-2}(g), Chebyshev polynomials of the second kind.
struct ChebyshevPair {
    double u_last; ///< U_{N-1}(g)
    double u_prev; ///< U_{N-2}(g)
    ChebyshevBranch branch;
};

/// Closed-form Chebyshev evaluation with a recurrence fallback in the
/// +-1e-8 neighbourhood of |g| = 1 where both closed forms degenerate.
/// count >= 1; U_0 = 1, U_{-1} = 0.
ChebyshevPair chebyshev_pair(double g, int count);

/// Full N-barrier transfer matrix:
///   t11 = f22^N [g11 U_{N-1} - U_{N-2}],  t12 = f22^N g12 U_{N-1},
/// t21, t22 by conjugation.
TransferMatrix n_barrier_matrix(const DispersionPair& d,
                                const BarrierSystem& sys);

/// N-barrier transmission coefficient 1 / (1 + |t12|^2 U_{N-1}^2)
/// (identically 1/|t11^{(N)}|^2, evaluated in the cancellation-free form).
double transmission_multi(const DispersionPair& d, const BarrierSystem& sys);

/// N-barrier scattering phase relative to free propagation across the
/// whole train, arg(t_N e^{i rho N P}):
///   atan2(U_{N-1} Im g11, U_{N-1} Re g11 - U_{N-2}),  principal value.
/// For count = 1, m = 1 this reduces exactly to the single-barrier
/// phase_shift; for general m it carries the extra free span (m-1) rho.
double phase_shift_multi(const DispersionPair& d, const BarrierSystem& sys);

/// Convenience: observables at energy eps for a barrier train.
double transmission_multi_at(const BarrierSystem& sys, double epsilon);
double phase_shift_multi_at(const BarrierSystem& sys, double epsilon);

/// Wigner time d delta_N / d eps via the stencil differentiator (no closed
/// form is available for N > 1). Step size is chosen from eps and clamped
/// away from the regime boundaries.
double wigner_time_multi(const BarrierSystem& sys, double epsilon);

} // namespace polyscat
