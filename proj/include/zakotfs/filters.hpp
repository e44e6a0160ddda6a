// SPDX-License-Identifier: Apache-2.0
//
// DD pulse-shaping filters. Each filter is separable, w_tx(tau, nu) =
// w1(tau) w2(nu), with real, even, unit-energy factors. Alongside the
// delay/Doppler-domain factors this module exposes their Fourier duals
// U(f) = FT[w1] and V(t) = FT[w2]; the duals have compact or Gaussian-decaying
// support for every filter here, which is what the channel and noise modules
// integrate over.

#pragma once

#include <complex>
#include <utility>

#include "zakotfs/frame.hpp"

namespace zakotfs {

enum class FilterKind { Sinc, Rrc, Gaussian, GaussianSinc };

/// Energy-normalization constant for the Gaussian-sinc factor:
/// Omega(alpha) = 1/sqrt(erf(pi/sqrt(2 alpha)) - sqrt(2 alpha/pi^3)(1 - e^{-pi^2/2 alpha})).
double gs_normalization(double alpha);

struct PulseShape {
    FilterKind kind = FilterKind::Sinc;
    double beta_tau = 0.0, beta_nu = 0.0;    // RRC roll-offs in [0, 1]
    double alpha_tau = 0.0, alpha_nu = 0.0;  // Gaussian decay parameters > 0
    double omega_tau = 1.0, omega_nu = 1.0;  // GS energy normalization (computed)

    static PulseShape sinc();
    static PulseShape rrc(double beta_tau = 0.05, double beta_nu = 0.1);
    static PulseShape gaussian(double alpha = 1.584);
    static PulseShape gaussian(double alpha_tau, double alpha_nu);
    static PulseShape gaussian_sinc(double alpha = 0.044);
    static PulseShape gaussian_sinc(double alpha_tau, double alpha_nu);
};

struct ExpansionFactors {
    double B_prime = 0.0;  // occupied bandwidth, >= B
    double T_prime = 0.0;  // occupied duration, >= T
};

/// Delay factor w1(tau).
double eval_w1(const PulseShape& s, const FrameParams& p, double tau);
/// Doppler factor w2(nu).
double eval_w2(const PulseShape& s, const FrameParams& p, double nu);

/// Frequency response of w1: U(f) = int w1(tau) e^{-j2pi f tau} dtau.
/// Real and even for all four filters. Rect edges take their midpoint value.
double eval_u_dual(const PulseShape& s, const FrameParams& p, double f);
/// Time response of w2: V(t) = int w2(nu) e^{-j2pi nu t} dnu.
double eval_v_dual(const PulseShape& s, const FrameParams& p, double t);

/// Half-widths beyond which the corresponding function is below ~1e-14 of its
/// peak (exact support for the compactly supported cases).
double w1_support(const PulseShape& s, const FrameParams& p);
double w2_support(const PulseShape& s, const FrameParams& p);
double u_support(const PulseShape& s, const FrameParams& p);
double v_support(const PulseShape& s, const FrameParams& p);

/// Matched receive filter w_rx(tau, nu) = w_tx*(-tau, -nu) e^{j2pi nu tau};
/// with real even factors this is w1(tau) w2(nu) e^{j2pi nu tau}.
struct MatchedRx {
    PulseShape shape;
    FrameParams params;
    cd operator()(double tau, double nu) const;
};
MatchedRx matched_rx(const PulseShape& s, const FrameParams& p);

/// Occupied bandwidth/duration: RRC expands by (1+beta); the others do not.
ExpansionFactors expansion_factors(const PulseShape& s, const FrameParams& p);

/// Fraction of |U|^2 energy inside |f| <= B/2 and of |V|^2 inside |t| <= T/2,
/// both by quadrature.
std::pair<double, double> energy_containment(const PulseShape& s, const FrameParams& p);

}  // namespace zakotfs
