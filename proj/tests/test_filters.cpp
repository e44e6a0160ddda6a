// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "zakotfs/filters.hpp"
#include "zakotfs/quadrature.hpp"

using namespace zakotfs;

namespace {

const FrameParams p12 = FrameParams::make(12, 14, 15e3);

double w1_energy(const PulseShape& s, const FrameParams& p) {
    // quadrature of int |w1|^2 dtau; sinc/RRC via the spectral side (compact),
    // others directly
    if (s.kind == FilterKind::Sinc || s.kind == FilterKind::Rrc) {
        const double F = u_support(s, p);
        auto f = [&](double x) { return std::norm(eval_u_dual(s, p, x)); };
        return quadrature::integrate_or_throw(f, -F, F, 1e-12, 1e-11, 8000).real();
    }
    const double L = w1_support(s, p);
    auto f = [&](double t) { return std::norm(eval_w1(s, p, t)); };
    return quadrature::integrate_or_throw(f, -L, L, 1e-12, 1e-11, 8000).real();
}

double w2_energy(const PulseShape& s, const FrameParams& p) {
    if (s.kind == FilterKind::Sinc || s.kind == FilterKind::Rrc) {
        const double F = v_support(s, p);
        auto f = [&](double t) { return std::norm(eval_v_dual(s, p, t)); };
        return quadrature::integrate_or_throw(f, -F, F, 1e-12, 1e-11, 8000).real();
    }
    const double L = w2_support(s, p);
    auto f = [&](double v) { return std::norm(eval_w2(s, p, v)); };
    return quadrature::integrate_or_throw(f, -L, L, 1e-12, 1e-11, 8000).real();
}

}  // namespace

TEST_CASE("gs_normalization") {
    // 1.0278 at alpha = 0.044
    CHECK(std::abs(gs_normalization(0.044) - 1.0278) < 1e-3);
    CHECK(gs_normalization(0.044) == doctest::Approx(1.027750938836294).epsilon(1e-12));
    // pure-sinc limit
    CHECK(gs_normalization(1e-9) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS(gs_normalization(0.0), std::invalid_argument);
    CHECK_THROWS_AS(gs_normalization(-0.1), std::invalid_argument);

    // random alpha: quadrature energy of the normalized factor is 1
    for (double alpha : {0.01, 0.044, 0.3, 1.0, 3.0}) {
        const PulseShape s = PulseShape::gaussian_sinc(alpha, alpha);
        CHECK(w1_energy(s, p12) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("unit energy for all four shapes") {
    for (const PulseShape& s : {PulseShape::sinc(), PulseShape::rrc(), PulseShape::gaussian(),
                                PulseShape::gaussian_sinc()}) {
        CHECK(w1_energy(s, p12) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(w2_energy(s, p12) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("w1/w2 values and nulls") {
    const double B = p12.bandwidth(), T = p12.duration();
    const PulseShape sinc_s = PulseShape::sinc();
    CHECK(eval_w1(sinc_s, p12, 0.0) == doctest::Approx(std::sqrt(B)).epsilon(1e-14));
    CHECK(eval_w2(sinc_s, p12, 0.0) == doctest::Approx(std::sqrt(T)).epsilon(1e-14));

    const PulseShape gs = PulseShape::gaussian_sinc();
    CHECK(eval_w1(gs, p12, 0.0) ==
          doctest::Approx(gs.omega_tau * std::sqrt(B)).epsilon(1e-14));

    // nulls at the Nyquist points, k = +-1..+-8
    for (int k = 1; k <= 8; ++k) {
        for (double sign : {-1.0, 1.0}) {
            CHECK(std::abs(eval_w1(sinc_s, p12, sign * k / B)) < 1e-12 * std::sqrt(B));
            CHECK(std::abs(eval_w1(gs, p12, sign * k / B)) < 1e-12 * std::sqrt(B));
            CHECK(std::abs(eval_w2(sinc_s, p12, sign * k / T)) < 1e-12 * std::sqrt(T));
            CHECK(std::abs(eval_w2(gs, p12, sign * k / T)) < 1e-12 * std::sqrt(T));
        }
    }

    // evenness on a grid
    for (const PulseShape& s : {PulseShape::sinc(), PulseShape::rrc(), PulseShape::gaussian(),
                                PulseShape::gaussian_sinc()}) {
        for (double x = 0.05; x < 4.0; x += 0.173) {
            CHECK(eval_w1(s, p12, x / B) == doctest::Approx(eval_w1(s, p12, -x / B)).epsilon(1e-14));
            CHECK(eval_w2(s, p12, x / T) == doctest::Approx(eval_w2(s, p12, -x / T)).epsilon(1e-14));
        }
    }

    // Gaussian value one Doppler bin away: e^{-alpha} of the peak, i.e. about
    // 7 dB below on the 10 log10 magnitude scale used in the reference plots
    const PulseShape gauss = PulseShape::gaussian();
    const double ratio = eval_w2(gauss, p12, 1.0 / T) / eval_w2(gauss, p12, 0.0);
    CHECK(ratio == doctest::Approx(std::exp(-1.584)).epsilon(1e-12));
    const double db10 = 10.0 * std::log10(ratio);
    CHECK(db10 > -7.5);
    CHECK(db10 < -6.5);

    // side-lobe ordering at 1.5/B: GS below sinc
    CHECK(std::abs(eval_w1(gs, p12, 1.5 / B)) < std::abs(eval_w1(sinc_s, p12, 1.5 / B)));
}

TEST_CASE("RRC(beta = 0) coincides with sinc on a dense grid") {
    const PulseShape z = PulseShape::rrc(0.0, 0.0), s = PulseShape::sinc();
    const double B = p12.bandwidth();
    for (double x = -6.0; x <= 6.0; x += 0.0137) {
        CHECK(std::abs(eval_w1(z, p12, x / B) - eval_w1(s, p12, x / B)) < 1e-10 * std::sqrt(B));
    }
    // removable singular points of the general formula
    const PulseShape r = PulseShape::rrc(0.25, 0.25);
    const double x0 = 1.0 / (4.0 * 0.25);
    CHECK(std::isfinite(eval_w1(r, p12, 0.0)));
    CHECK(std::isfinite(eval_w1(r, p12, x0 / B)));
    // continuity at the guarded points
    CHECK(eval_w1(r, p12, x0 / B) ==
          doctest::Approx(eval_w1(r, p12, (x0 + 1e-6) / B)).epsilon(1e-4));
    CHECK(eval_w1(r, p12, 0.0) == doctest::Approx(eval_w1(r, p12, 1e-6 / B)).epsilon(1e-4));
    CHECK_THROWS_AS(PulseShape::rrc(1.2, 0.0), std::invalid_argument);
}

TEST_CASE("duals invert back to the primal factors") {
    // w1(tau) = int U(f) e^{j2pi f tau} df and likewise for w2: pins the
    // analytic duals to the primal definitions by Fourier uniqueness
    for (const PulseShape& s : {PulseShape::sinc(), PulseShape::rrc(), PulseShape::gaussian(),
                                PulseShape::gaussian_sinc()}) {
        const double F = u_support(s, p12);
        for (double bt : {0.0, 0.31, 0.5, 1.27, 2.6}) {
            const double tau = bt / p12.bandwidth();
            auto f = [&](double fr) {
                return eval_u_dual(s, p12, fr) * std::cos(2.0 * M_PI * fr * tau);
            };
            const double got = quadrature::integrate_or_throw(f, -F, F, 1e-12, 1e-10, 8000).real();
            CHECK(got == doctest::Approx(eval_w1(s, p12, tau)).epsilon(1e-8));
        }
        const double Ft = v_support(s, p12);
        for (double tn : {0.0, 0.31, 1.27}) {
            const double nu = tn / p12.duration();
            auto f = [&](double t) {
                return eval_v_dual(s, p12, t) * std::cos(2.0 * M_PI * t * nu);
            };
            const double got = quadrature::integrate_or_throw(f, -Ft, Ft, 1e-12, 1e-10, 8000).real();
            CHECK(got == doctest::Approx(eval_w2(s, p12, nu)).epsilon(1e-8));
        }
    }
}

TEST_CASE("matched receive filter") {
    const PulseShape s = PulseShape::gaussian_sinc();
    const MatchedRx rx = matched_rx(s, p12);
    const double B = p12.bandwidth(), T = p12.duration();
    CHECK(std::abs(rx(0.0, 0.0) - cd(eval_w1(s, p12, 0.0) * eval_w2(s, p12, 0.0), 0.0)) < 1e-12);
    // unimodular phase
    for (double bt : {0.3, 1.7}) {
        for (double tn : {0.4, 2.2}) {
            const double tau = bt / B, nu = tn / T;
            CHECK(std::abs(rx(tau, nu)) ==
                  doctest::Approx(std::abs(eval_w1(s, p12, tau) * eval_w2(s, p12, nu)))
                      .epsilon(1e-13));
        }
    }
    const MatchedRx rx_sinc = matched_rx(PulseShape::sinc(), p12);
    CHECK(std::abs(rx_sinc(1.0 / B, 1.0 / T)) < 1e-12);
}

TEST_CASE("expansion factors") {
    const auto s = expansion_factors(PulseShape::sinc(), p12);
    CHECK(s.B_prime == doctest::Approx(p12.bandwidth()));
    CHECK(s.T_prime == doctest::Approx(p12.duration()));
    const auto g = expansion_factors(PulseShape::gaussian_sinc(), p12);
    CHECK(g.B_prime == doctest::Approx(p12.bandwidth()));
    CHECK(g.T_prime == doctest::Approx(p12.duration()));
    const auto r = expansion_factors(PulseShape::rrc(0.05, 0.1), p12);
    CHECK(r.B_prime == doctest::Approx(1.05 * p12.bandwidth()).epsilon(1e-14));
    CHECK(r.T_prime == doctest::Approx(1.1 * p12.duration()).epsilon(1e-14));
}

TEST_CASE("energy containment") {
    const auto sinc_c = energy_containment(PulseShape::sinc(), p12);
    CHECK(sinc_c.first == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sinc_c.second == doctest::Approx(1.0).epsilon(1e-9));

    const auto gauss_c = energy_containment(PulseShape::gaussian(), p12);
    CHECK(gauss_c.first > 0.985);
    CHECK(gauss_c.first < 0.995);
    CHECK(gauss_c.second > 0.985);
    CHECK(gauss_c.second < 0.995);

    const auto gs_c = energy_containment(PulseShape::gaussian_sinc(), p12);
    CHECK(gs_c.first > 0.985);
    CHECK(gs_c.first < 0.995);
    CHECK(gs_c.second > 0.985);
    CHECK(gs_c.second < 0.995);
}
