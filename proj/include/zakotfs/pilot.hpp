// SPDX-License-Identifier: Apache-2.0
//
// Frame layouts (exclusive pilot, embedded pilot + guard + data, all-data),
// frame construction, model-free read-off estimation of the effective
// channel, and the normalized-MSE metric.

#pragma once

#include <span>
#include <vector>

#include "zakotfs/channel.hpp"
#include "zakotfs/frame.hpp"

namespace zakotfs {

enum class LayoutKind { Exclusive, Embedded, FullData };

/// Regions are delay-band stripes spanning all Doppler bins. For Embedded:
/// pilot region P covers delay bins [k_p - p1, k_p + k_max + p2], guard G
/// fills out to [k_p - k_max - g1, k_p + k_max + g2] on both sides, data D is
/// the rest. P, G, D partition the grid.
struct FrameLayout {
    LayoutKind kind = LayoutKind::Exclusive;
    int M = 0, N = 0;
    int k_p = 0, l_p = 0;
    int p1 = 0, p2 = 0, g1 = 0, g2 = 0, k_max = 0;

    std::vector<int> pilot_region;  // flat indices, ascending (includes the pilot bin)
    std::vector<int> guard_region;
    std::vector<int> data_region;

    int pilot_flat() const { return k_p * N + l_p; }
    /// Delay columns of P relative to the pilot: [-p1, k_max + p2].
    int read_cols() const { return p1 + k_max + p2 + 1; }
};

/// Embedded layout with the stated delay-extent parameters; bounds must stay
/// inside [0, M).
FrameLayout build_layout(const FrameParams& p, int p1, int p2, int g1, int g2, int k_max);

/// Exclusive pilot layout: the whole grid is pilot region, no data.
FrameLayout exclusive_layout(const FrameParams& p);

/// All-data layout (perfect-CSI baselines): D is the whole grid, no pilot.
FrameLayout full_data_layout(const FrameParams& p);

struct DdFrame {
    DdVector x;
    FrameLayout layout;
    double E_p = 0.0;
    double E_d = 0.0;
    std::vector<cd> data_symbols;
};

/// Places sqrt(E_p) on the pilot bin, sqrt(E_d/|D|) x_d on the data region,
/// zero elsewhere. data_symbols.size() must equal |D| (unit average energy
/// constellation assumed).
DdFrame build_frame(const FrameParams& p, const FrameLayout& layout, double E_p, double E_d,
                    std::span<const cd> data_symbols);

/// Model-free read-off estimate: h_hat[k,l] = y[k + M/2, l + N/2]
/// e^{-j pi l / N} / sqrt(E_p) on the read window, zero outside. Exclusive
/// reads n_dc delay columns centred on the pilot (n_dc = M reads the whole
/// frame); Embedded reads inside the pilot region only (n_dc defaults to the
/// full P stripe and may not exceed it). Result feeds build_H_eff directly.
HGrid estimate_h_eff(const DdVector& y, const FrameLayout& layout, const FrameParams& p,
                     int n_dc, double E_p);

/// ||H_true - H_est||_F^2 / ||H_true||_F^2 for one realization.
double normalized_mse(const Eigen::MatrixXcd& H_true, const Eigen::MatrixXcd& H_est);

}  // namespace zakotfs
