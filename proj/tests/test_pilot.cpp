// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "zakotfs/pilot.hpp"
#include "zakotfs/rng.hpp"

using namespace zakotfs;

namespace {

const FrameParams p4 = FrameParams::make(4, 4, 15e3);

}  // namespace

TEST_CASE("embedded layout set arithmetic at the full-scale geometry") {
    const FrameParams p = FrameParams::make(32, 48, 15e3);
    const FrameLayout lay = build_layout(p, 3, 1, 2, 3, 2);
    CHECK(lay.pilot_region.size() == 7u * 48u);   // delay bins [13, 19]
    CHECK(lay.guard_region.size() == 3u * 48u);   // bins {12} and {20, 21}
    CHECK(lay.data_region.size() == 32u * 48u - 336u - 144u);  // 1056

    // pilot inside P
    CHECK(std::binary_search(lay.pilot_region.begin(), lay.pilot_region.end(), lay.pilot_flat()));

    // disjointness and coverage
    std::set<int> all;
    for (int i : lay.pilot_region) all.insert(i);
    for (int i : lay.guard_region) CHECK(all.insert(i).second);
    for (int i : lay.data_region) CHECK(all.insert(i).second);
    CHECK(all.size() == static_cast<size_t>(p.grid_size()));

    // stripe bounds
    for (int i : lay.pilot_region) {
        const int k = i / 48;
        CHECK(k >= 13);
        CHECK(k <= 19);
    }
    for (int i : lay.guard_region) {
        const int k = i / 48;
        CHECK((k == 12 || k == 20 || k == 21));
    }

    CHECK_THROWS_AS(build_layout(p, 3, 1, 20, 3, 2), std::invalid_argument);   // g1 runs below 0
    CHECK_THROWS_AS(build_layout(p, 3, 1, 2, 14, 2), std::invalid_argument);   // g2 beyond M
    CHECK_THROWS_AS(build_layout(p, 5, 1, 2, 3, 2), std::invalid_argument);    // p1 > k_max+g1
    CHECK_THROWS_AS(build_layout(p, -1, 1, 2, 3, 2), std::invalid_argument);
}

TEST_CASE("exclusive and all-data layouts") {
    const FrameLayout ex = exclusive_layout(p4);
    CHECK(ex.pilot_region.size() == 16u);
    CHECK(ex.data_region.empty());
    CHECK(ex.k_p == 2);
    CHECK(ex.l_p == 2);

    const FrameLayout fd = full_data_layout(p4);
    CHECK(fd.data_region.size() == 16u);
    CHECK(fd.pilot_region.empty());
}

TEST_CASE("frame construction") {
    const FrameLayout ex = exclusive_layout(p4);
    const DdFrame pf = build_frame(p4, ex, 9.0, 0.0, {});
    CHECK(pf.x.at(2, 2) == cd(3.0, 0.0));  // sqrt(E_p) exactly
    CHECK(pf.x.v.squaredNorm() == doctest::Approx(9.0));

    const FrameParams p8 = FrameParams::make(8, 4, 15e3);
    const FrameLayout emb = build_layout(p8, 1, 1, 1, 1, 1);
    std::vector<cd> syms(emb.data_region.size(), cd(1.0, 0.0));
    const DdFrame f = build_frame(p8, emb, 4.0, 2.0, syms);
    CHECK(f.x.v(emb.pilot_flat()) == cd(2.0, 0.0));
    // zeros on P \ {pilot} and G
    for (int i : emb.pilot_region)
        if (i != emb.pilot_flat()) CHECK(f.x.v(i) == cd(0.0, 0.0));
    for (int i : emb.guard_region) CHECK(f.x.v(i) == cd(0.0, 0.0));
    // total energy = E_p + E_d for unit-energy symbols
    CHECK(f.x.v.squaredNorm() == doctest::Approx(6.0).epsilon(1e-12));
    // E_d = 0 degenerates to an exclusive-equivalent frame
    const DdFrame f0 = build_frame(p8, emb, 4.0, 0.0, std::vector<cd>(syms.size(), cd(0, 0)));
    CHECK(f0.x.v.squaredNorm() == doctest::Approx(4.0));

    std::vector<cd> wrong(3);
    CHECK_THROWS_AS(build_frame(p8, emb, 1.0, 1.0, wrong), std::invalid_argument);
}

TEST_CASE("read-off estimator inverts the n = m = 0 response") {
    // brute-force check of the phase convention at M = N = 4: a noiseless
    // frame through H_eff, read off, must reproduce h_grid on the fundamental
    // window up to quasi-periodic replica leakage
    rng::SubstreamRng r(17, 0);
    const PhysicalChannel ch = sample_veh_a(r, 815.0, p4);
    const PulseShape gs = PulseShape::gaussian_sinc();
    const HGrid grid = sample_h_grid(gs, p4, ch);
    const Eigen::MatrixXcd H = build_H_eff(grid, p4);

    const FrameLayout ex = exclusive_layout(p4);
    const double Ep = 4.0;
    const DdFrame pf = build_frame(p4, ex, Ep, 0.0, {});
    DdVector y{p4.M, p4.N, H * pf.x.v};

    const HGrid est = estimate_h_eff(y, ex, p4, p4.M, Ep);

    // replica leakage bound: neighbouring replicas enter through grid values
    // at distance >= M/2 in delay or N/2 in Doppler
    double leak = 0.0;
    for (int k = -2 * p4.M + 1; k <= 2 * p4.M - 1; ++k)
        for (int l = -2 * p4.N + 1; l <= 2 * p4.N - 1; ++l)
            if (std::abs(k) >= p4.M / 2 || std::abs(l) >= p4.N / 2)
                leak = std::max(leak, std::abs(grid.at(k, l)));

    for (int k = -p4.M / 2; k < p4.M / 2; ++k)
        for (int l = -p4.N / 2; l < p4.N / 2; ++l)
            CHECK(std::abs(est.at(k, l) - grid.at(k, l)) < 20.0 * leak + 1e-12);

    // scalar re-check of Eq pattern: y_p[k,l] = h[k-M/2, l-N/2] e^{j pi (l-N/2)/N} sqrt(Ep)
    // for the dominant term
    for (int k = 0; k < p4.M; ++k)
        for (int l = 0; l < p4.N; ++l) {
            cd want = 0.0;
            for (int n = -1; n <= 1; ++n)
                for (int m = -1; m <= 1; ++m) {
                    const int kp = p4.M / 2, lp = p4.N / 2;
                    want += grid.at(k - kp - n * p4.M, l - lp - m * p4.N) *
                            std::polar(1.0, 2.0 * M_PI * n * lp / double(p4.N)) *
                            std::polar(1.0, 2.0 * M_PI * (l - lp - m * p4.N) * (kp + n * p4.M) /
                                                double(p4.M * p4.N));
                }
            CHECK(std::abs(y.at(k, l) / std::sqrt(Ep) - want) < 1e-12);
        }
}

TEST_CASE("estimator edge cases") {
    const FrameLayout ex = exclusive_layout(p4);
    DdVector zero = DdVector::zeros(p4);
    const HGrid est = estimate_h_eff(zero, ex, p4, p4.M, 1.0);
    CHECK(est.vals.cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(estimate_h_eff(zero, ex, p4, p4.M + 1, 1.0), std::invalid_argument);
    const FrameLayout fd = full_data_layout(p4);
    CHECK_THROWS_AS(estimate_h_eff(zero, fd, p4, -1, 1.0), std::invalid_argument);

    const FrameParams p8 = FrameParams::make(8, 4, 15e3);
    const FrameLayout emb = build_layout(p8, 1, 1, 1, 1, 1);
    DdVector z8 = DdVector::zeros(p8);
    CHECK_NOTHROW(estimate_h_eff(z8, emb, p8, -1, 1.0));
    CHECK_THROWS_AS(estimate_h_eff(z8, emb, p8, emb.read_cols() + 1, 1.0), std::invalid_argument);
}

TEST_CASE("embedded read window stays inside P") {
    const FrameParams p8 = FrameParams::make(8, 4, 15e3);
    const FrameLayout emb = build_layout(p8, 1, 1, 1, 1, 1);  // P bins [k_p-1, k_p+2]
    DdVector y = DdVector::zeros(p8);
    for (int i = 0; i < y.size(); ++i) y.v(i) = cd(1.0, 0.0);
    const HGrid est = estimate_h_eff(y, emb, p8, -1, 1.0);
    for (int k = est.k_min; k <= -est.k_min; ++k) {
        bool in_window = (k >= -1 && k <= 2);
        bool nonzero = false;
        for (int l = est.l_min; l <= -est.l_min; ++l)
            if (std::abs(est.at(k, l)) > 0.0) nonzero = true;
        CHECK(nonzero == in_window);
    }
}

TEST_CASE("normalized mse") {
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Random(6, 6);
    CHECK(normalized_mse(H, H) == 0.0);
    CHECK(normalized_mse(H, Eigen::MatrixXcd::Zero(6, 6)) == doctest::Approx(1.0));
    CHECK(normalized_mse(H, 2.0 * H) == doctest::Approx(1.0));
    CHECK_THROWS_AS(normalized_mse(Eigen::MatrixXcd::Zero(6, 6), H), std::invalid_argument);
    CHECK_THROWS_AS(normalized_mse(H, Eigen::MatrixXcd::Zero(5, 5)), std::invalid_argument);
}
