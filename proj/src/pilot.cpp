// SPDX-License-Identifier: Apache-2.0

#include "zakotfs/pilot.hpp"

#include <cmath>
#include <stdexcept>

namespace zakotfs {

namespace {

void append_stripe(std::vector<int>& out, const FrameParams& p, int k_lo, int k_hi) {
    for (int k = k_lo; k <= k_hi; ++k)
        for (int l = 0; l < p.N; ++l) out.push_back(k * p.N + l);
}

}  // namespace

FrameLayout build_layout(const FrameParams& p, int p1, int p2, int g1, int g2, int k_max) {
    if (p1 < 0 || p2 < 0 || g1 < 0 || g2 < 0 || k_max < 0)
        throw std::invalid_argument("build_layout: region extents must be non-negative");
    FrameLayout lay;
    lay.kind = LayoutKind::Embedded;
    lay.M = p.M;
    lay.N = p.N;
    lay.k_p = p.M / 2;
    lay.l_p = p.N / 2;
    lay.p1 = p1;
    lay.p2 = p2;
    lay.g1 = g1;
    lay.g2 = g2;
    lay.k_max = k_max;

    const int pilot_lo = lay.k_p - p1;
    const int pilot_hi = lay.k_p + k_max + p2;
    const int guard_lo = lay.k_p - k_max - g1;
    const int guard_hi = lay.k_p + k_max + g2;
    if (guard_lo > pilot_lo || guard_hi < pilot_hi)
        throw std::invalid_argument("build_layout: guard boundaries overlap the pilot region");
    if (guard_lo < 0 || guard_hi >= p.M)
        throw std::invalid_argument("build_layout: regions do not fit inside [0, M)");

    append_stripe(lay.pilot_region, p, pilot_lo, pilot_hi);
    if (guard_lo <= pilot_lo - 1) append_stripe(lay.guard_region, p, guard_lo, pilot_lo - 1);
    if (pilot_hi + 1 <= guard_hi) append_stripe(lay.guard_region, p, pilot_hi + 1, guard_hi);
    for (int k = 0; k < p.M; ++k) {
        if (k >= guard_lo && k <= guard_hi) continue;
        for (int l = 0; l < p.N; ++l) lay.data_region.push_back(k * p.N + l);
    }
    return lay;
}

FrameLayout exclusive_layout(const FrameParams& p) {
    FrameLayout lay;
    lay.kind = LayoutKind::Exclusive;
    lay.M = p.M;
    lay.N = p.N;
    lay.k_p = p.M / 2;
    lay.l_p = p.N / 2;
    lay.pilot_region.resize(p.grid_size());
    for (int i = 0; i < p.grid_size(); ++i) lay.pilot_region[i] = i;
    return lay;
}

FrameLayout full_data_layout(const FrameParams& p) {
    FrameLayout lay;
    lay.kind = LayoutKind::FullData;
    lay.M = p.M;
    lay.N = p.N;
    lay.k_p = p.M / 2;
    lay.l_p = p.N / 2;
    lay.data_region.resize(p.grid_size());
    for (int i = 0; i < p.grid_size(); ++i) lay.data_region[i] = i;
    return lay;
}

DdFrame build_frame(const FrameParams& p, const FrameLayout& layout, double E_p, double E_d,
                    std::span<const cd> data_symbols) {
    if (layout.M != p.M || layout.N != p.N)
        throw std::invalid_argument("build_frame: layout/frame dimension mismatch");
    if (data_symbols.size() != layout.data_region.size())
        throw std::invalid_argument("build_frame: data symbol count != |D|");
    if (E_p < 0.0 || E_d < 0.0) throw std::invalid_argument("build_frame: negative energy");
    if (E_p > 0.0 && layout.kind == LayoutKind::FullData)
        throw std::invalid_argument("build_frame: all-data layout carries no pilot");

    DdFrame f;
    f.layout = layout;
    f.E_p = E_p;
    f.E_d = E_d;
    f.x = DdVector::zeros(p);
    f.data_symbols.assign(data_symbols.begin(), data_symbols.end());
    if (layout.kind != LayoutKind::FullData) f.x.v(layout.pilot_flat()) = std::sqrt(E_p);
    if (!data_symbols.empty()) {
        const double scale = std::sqrt(E_d / static_cast<double>(data_symbols.size()));
        for (size_t i = 0; i < data_symbols.size(); ++i)
            f.x.v(layout.data_region[i]) = scale * data_symbols[i];
    }
    return f;
}

HGrid estimate_h_eff(const DdVector& y, const FrameLayout& layout, const FrameParams& p,
                     int n_dc, double E_p) {
    if (y.size() != p.grid_size())
        throw std::invalid_argument("estimate_h_eff: received frame size mismatch");
    if (!(E_p > 0.0)) throw std::invalid_argument("estimate_h_eff: pilot energy must be positive");

    // read window in pilot-relative delay bins [k_lo, k_hi]
    int k_lo, k_hi;
    if (layout.kind == LayoutKind::Embedded) {
        const int full = layout.read_cols();
        if (n_dc <= 0) n_dc = full;
        if (n_dc > full)
            throw std::invalid_argument("estimate_h_eff: read window exceeds the pilot region");
        if (n_dc == full) {
            k_lo = -layout.p1;
            k_hi = layout.k_max + layout.p2;
        } else {
            k_lo = std::max(-layout.p1, -(n_dc / 2));
            k_hi = k_lo + n_dc - 1;
        }
    } else if (layout.kind == LayoutKind::Exclusive) {
        if (n_dc <= 0) n_dc = p.M;
        if (n_dc > p.M) throw std::invalid_argument("estimate_h_eff: n_dc exceeds M");
        k_lo = -(n_dc / 2);
        k_hi = k_lo + n_dc - 1;
    } else {
        throw std::invalid_argument("estimate_h_eff: layout carries no pilot");
    }

    HGrid est = HGrid::zeros(p);
    const int kp = p.M / 2, lp = p.N / 2;
    for (int k = k_lo; k <= k_hi; ++k) {
        for (int l = -p.N / 2; l < p.N / 2; ++l) {
            const double ph = -M_PI * static_cast<double>(l) / p.N;
            est.at(k, l) =
                y.at(k + kp, l + lp) * cd(std::cos(ph), std::sin(ph)) / std::sqrt(E_p);
        }
    }
    return est;
}

double normalized_mse(const Eigen::MatrixXcd& H_true, const Eigen::MatrixXcd& H_est) {
    if (H_true.rows() != H_est.rows() || H_true.cols() != H_est.cols())
        throw std::invalid_argument("normalized_mse: dimension mismatch");
    const double denom = H_true.squaredNorm();
    if (denom == 0.0) throw std::invalid_argument("normalized_mse: reference has zero norm");
    return (H_true - H_est).squaredNorm() / denom;
}

}  // namespace zakotfs
