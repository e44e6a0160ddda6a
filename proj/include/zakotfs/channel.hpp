// SPDX-License-Identifier: Apache-2.0
//
// Physical DD channel (Veh-A generator) and the effective channel: matched
// filter cascade evaluated either in closed form (per filter) or by adaptive
// quadrature of the defining integrals, sampled onto the replica grid and
// assembled into the MN x MN matrix.

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "zakotfs/filters.hpp"
#include "zakotfs/frame.hpp"
#include "zakotfs/rng.hpp"

namespace zakotfs {

struct PathTriple {
    cd gain;
    double delay = 0.0;    // seconds, >= 0
    double doppler = 0.0;  // Hz
};

struct PhysicalChannel {
    std::vector<PathTriple> paths;
};

/// ITU Vehicular-A power delay profile.
extern const std::array<double, 6> kVehADelaysSec;
extern const std::array<double, 6> kVehARelPowersDb;

/// Draws a Veh-A realization: fixed delays, complex circular Gaussian gains
/// with E[sum |h_i|^2] = 1, Dopplers nu_i = nu_max cos(theta_i) with theta_i
/// uniform on [0, 2pi). With per_realization_norm the gains are rescaled so
/// sum |h_i|^2 = 1 exactly in every draw.
/// Checks the crystalline condition (max delay < tau_p, nu_max < nu_p).
PhysicalChannel sample_veh_a(rng::SubstreamRng& rng, double nu_max_hz, const FrameParams& p,
                             bool per_realization_norm = false);

/// h_eff(tau, nu) by adaptive quadrature of the matched-filter integrals.
/// The delay integral is evaluated in the frequency domain and the Doppler
/// integral in the time domain (exact Parseval transcriptions), where every
/// supported filter has compact or Gaussian-decaying support; a direct
/// truncation in the tau'/nu' domain cannot reach oracle accuracy for the
/// slowly decaying sinc/RRC tails.
/// Throws with the achieved error estimate if the tolerance is not met.
cd h_eff_quadrature(const PulseShape& s, const FrameParams& p, const PhysicalChannel& ch,
                    double tau, double nu, double epsrel = 1e-9);

/// h_eff(tau, nu) in closed form for the Gaussian-sinc filter (f1/f2/f3 based,
/// with dedicated tau = tau_i / nu = nu_i branches selected inside a window of
/// 1e-8/B resp. 1e-8/T around the removable singularities).
cd h_eff_gs_closed_form(const PulseShape& s, const FrameParams& p, const PhysicalChannel& ch,
                        double tau, double nu);

/// Pointwise effective-channel evaluator.
using HEffEvaluator = std::function<cd(double tau, double nu)>;

/// Evaluator used by simulations: closed forms for sinc/Gaussian/GS, dual-
/// domain fixed-panel integration for RRC. Agrees with h_eff_quadrature to
/// <= 1e-6 relative (tested).
HEffEvaluator make_sim_evaluator(const PulseShape& s, const FrameParams& p,
                                 const PhysicalChannel& ch);
HEffEvaluator make_quadrature_evaluator(const PulseShape& s, const FrameParams& p,
                                        const PhysicalChannel& ch, double epsrel = 1e-9);

/// Samples of h_eff on k in [k_min, -k_min], l in [l_min, -l_min]; for the
/// default replica range 1 that is k in [-(2M-1), 2M-1], l in [-(2N-1), 2N-1],
/// exactly the indices build_H_eff consumes with n, m in {-1,0,1}.
struct HGrid {
    int M = 0, N = 0;
    int k_min = 0, l_min = 0;
    Eigen::MatrixXcd vals;  // row k - k_min, col l - l_min

    cd at(int k, int l) const;  // throws out_of_range off the stored range
    cd& at(int k, int l);
    static HGrid zeros(const FrameParams& p, int replica_range = 1);
};

/// Dense h_eff sampling at (k tau_p/M, l nu_p/N). OpenMP over grid rows; the
/// serial variant computes identical values in identical order per point.
HGrid sample_h_grid(const HEffEvaluator& eval, const FrameParams& p);
HGrid sample_h_grid_serial(const HEffEvaluator& eval, const FrameParams& p);

/// Grid sampling for a (shape, channel) pair: per-filter fast path (for RRC a
/// row-shared fixed-node rule instead of per-point adaptive panels).
HGrid sample_h_grid(const PulseShape& s, const FrameParams& p, const PhysicalChannel& ch);

/// Effective channel matrix (Eq.-10-style assembly):
///   H[k'N+l', kN+l] = sum_{n,m in [-r,r]} h[k'-k-nM, l'-l-mN]
///                     e^{j2pi n l/N} e^{j2pi (l'-l-mN)(k+nM)/(MN)}.
/// OpenMP over columns; serial variant identical arithmetic.
Eigen::MatrixXcd build_H_eff(const HGrid& grid, const FrameParams& p, int replica_range = 1);
Eigen::MatrixXcd build_H_eff_serial(const HGrid& grid, const FrameParams& p,
                                    int replica_range = 1);

struct EffectiveChannel {
    HGrid h_grid;
    Eigen::MatrixXcd H;
};

EffectiveChannel make_effective_channel(const PulseShape& s, const FrameParams& p,
                                        const PhysicalChannel& ch, int replica_range = 1);

}  // namespace zakotfs
