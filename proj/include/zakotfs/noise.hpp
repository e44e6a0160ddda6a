// SPDX-License-Identifier: Apache-2.0
//
// Filtered-noise covariance on the DD grid and correlated noise sampling.
// Covariance entries have the form
//   C[(k1,l1),(k2,l2)] = tau_p sum_{q1,q2} e^{j2pi(q2 l2 - q1 l1)/N}
//                        g(k1 tau_p/M + q1 tau_p) g(k2 tau_p/M + q2 tau_p)
//                        S((k2-k1)/M tau_p + (q2-q1) tau_p),
// where g is the time response of the Doppler factor (V) and S the
// autocorrelation of the delay factor scaled by N0. g and S come either from
// closed forms (erf window / f1 forms for GS, exact ambiguity values for the
// others) or from quadrature of the defining integrals.

#pragma once

#include "zakotfs/filters.hpp"
#include "zakotfs/frame.hpp"
#include "zakotfs/rng.hpp"

namespace zakotfs {

struct NoiseCovariance {
    Eigen::MatrixXcd C_unit;  // C = N0 * C_unit
    double N0 = 1.0;
    Eigen::MatrixXcd C() const { return N0 * C_unit; }
};

/// q-sum truncation: |q| <= q_range covers the support of g (roughly N/2 plus
/// the filter-dependent tail), |q2 - q1| <= dq_range covers the support of S.
int default_q_range(const PulseShape& s, const FrameParams& p);
int default_dq_range(const PulseShape& s, const FrameParams& p);

/// Autocorrelation of the delay factor at lag x, int w1(u) w1(u+x) du, in
/// closed form (S/N0 of the theorem forms for GS; sinc / raised-cosine /
/// Gaussian values for the others).
double w1_autocorr_closed(const PulseShape& s, const FrameParams& p, double x);

/// One covariance entry for the Gaussian-sinc filter by the direct double
/// q-sum of closed forms. Serial reference for the table-based assembly.
cd noise_cov_entry_gs(int k1, int l1, int k2, int l2, const FrameParams& p, const PulseShape& gs,
                      double N0, int q_range = -1);

/// Full covariance via closed-form g and S. OpenMP over rows; the serial
/// variant computes identical values.
NoiseCovariance noise_cov_closed(const PulseShape& s, const FrameParams& p, double N0,
                                 int q_range = -1);
NoiseCovariance noise_cov_closed_serial(const PulseShape& s, const FrameParams& p, double N0,
                                        int q_range = -1);

/// Full covariance with g and S evaluated by adaptive quadrature of their
/// defining integrals (S in the spectral form int U(f)^2 e^{j2pi f x} df; g in
/// the delay-domain form for the Gaussian-decaying filters, Fourier-inversion
/// values for the compactly banded ones, whose primal integral does not
/// converge absolutely). Small grids only.
NoiseCovariance noise_cov_quadrature(const PulseShape& s, const FrameParams& p, double N0,
                                     int q_range = -1);

/// White-noise covariance N0 * I (detector option).
NoiseCovariance noise_cov_white(const FrameParams& p, double N0);

struct NoiseFactor {
    Eigen::MatrixXcd L_unit;   // L L^H = C_unit after PSD clamping
    double clamped_fraction = 0.0;  // |clamped eigenvalue mass| / trace
};

/// Factor C_unit = L L^H. Cholesky when positive definite; otherwise an
/// eigendecomposition with negative eigenvalues clamped to zero.
/// Throws if the factorization cannot be completed.
NoiseFactor noise_factor(const NoiseCovariance& cov);

/// n = sqrt(N0) L z with z i.i.d. circular complex standard normal.
DdVector sample_noise(const NoiseFactor& f, double N0, const FrameParams& p,
                      rng::SubstreamRng& rng);

/// Factor-and-sample convenience (spec surface).
DdVector sample_correlated_noise(const NoiseCovariance& cov, const FrameParams& p,
                                 rng::SubstreamRng& rng);

}  // namespace zakotfs
