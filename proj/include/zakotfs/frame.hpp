// SPDX-License-Identifier: Apache-2.0
//
// Discrete delay-Doppler frame geometry: grid dimensions, the k*N+l
// vectorization shared by every matrix in the library, and quasi-periodic
// extension of grid signals.

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace zakotfs {

using cd = std::complex<double>;

/// Frame geometry. M delay bins x N Doppler bins over one fundamental period
/// (delay period tau_p = 1/nu_p, Doppler period nu_p). Bandwidth B = M nu_p,
/// frame duration T = N tau_p, so B*T = M*N.
struct FrameParams {
    int M = 0;          ///< delay bins (even, positive)
    int N = 0;          ///< Doppler bins (even, positive)
    double nu_p = 0.0;  ///< Doppler period in Hz

    double tau_p() const { return 1.0 / nu_p; }  // derived, never stored
    double bandwidth() const { return M * nu_p; }
    double duration() const { return N * tau_p(); }
    int grid_size() const { return M * N; }

    /// Validates and constructs. M and N must be positive and even (the pilot
    /// sits at the exact grid point (M/2, N/2)); nu_p must be positive.
    static FrameParams make(int M, int N, double nu_p_hz);
};

struct DdIndex {
    int k = 0;  // delay bin, any integer
    int l = 0;  // Doppler bin, any integer
};

/// An M*N complex grid signal stored flat; entry (k, l) lives at k*N + l.
struct DdVector {
    int M = 0, N = 0;
    Eigen::VectorXcd v;

    static DdVector zeros(const FrameParams& p) {
        return {p.M, p.N, Eigen::VectorXcd::Zero(p.grid_size())};
    }
    cd& at(int k, int l) { return v(k * N + l); }
    cd at(int k, int l) const { return v(k * N + l); }
    int size() const { return M * N; }
};

/// Flat index k*N + l for in-range (k, l); out-of-range indices are rejected.
int flat_index(const FrameParams& p, int k, int l);

/// Floor division / modulo helpers for wrap arithmetic with negative indices.
inline int floor_div(int a, int b) {
    int q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline int floor_mod(int a, int b) { return a - floor_div(a, b) * b; }

/// Quasi-periodic read of x at any integer (k, l): with k = k0 + n*M and
/// l = l0 + m*N (k0 in [0,M), l0 in [0,N)), returns x[k0,l0] * exp(j2pi n l0/N).
/// The Doppler wrap count m contributes no phase.
cd quasi_periodic_value(const DdVector& x, const FrameParams& p, int k, int l);

}  // namespace zakotfs
