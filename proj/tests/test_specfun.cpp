// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "zakotfs/quadrature.hpp"
#include "zakotfs/rng.hpp"
#include "zakotfs/specfun.hpp"

using namespace zakotfs;
namespace sf = zakotfs::specfun;
using cd = std::complex<double>;

namespace {

// independent oracle: f1 defining integral by adaptive quadrature, clipped to
// the effective Gaussian support
cd f1_oracle(double a, double x, double y, double z) {
    const double half = 7.0 / std::sqrt(a);
    const double lo = std::max(std::min(y, x), -half), hi = std::min(std::max(y, x), half);
    const double sign = x >= y ? 1.0 : -1.0;
    if (lo >= hi) return 0.0;
    auto f = [&](double t) {
        return std::exp(-a * t * t) * cd(std::cos(z * t), -std::sin(z * t));
    };
    return sign * quadrature::integrate_or_throw(f, lo, hi, 1e-13, 1e-12, 8000);
}

}  // namespace

TEST_CASE("faddeeva reference values (wofz oracle)") {
    struct KV {
        cd z, w;
    };
    // frozen from an independent high-precision evaluation
    const KV table[] = {
        {{0.5, 0.5}, {0.53315670791217484, 0.23048823138445851}},
        {{3.0, 0.0}, {0.00012340980408667956, 0.20115731703760037}},
        {{0.0, 2.0}, {0.2553956763105058, 0.0}},
        {{6.0, 1.0}, {0.015885128156109089, 0.092628746299517534}},
        {{1.0, 9.0}, {0.061569850723632372, 0.0067600578371657507}},
        {{12.0, 0.25}, {0.00098944021549175558, 0.047159945309053881}},
        {{20.0, 20.0}, {0.014113538470519283, 0.014095907649337071}},
    };
    for (const auto& kv : table) {
        const cd got = sf::faddeeva_w(kv.z);
        CHECK(std::abs(got - kv.w) <= 1e-12 * std::abs(kv.w));
    }
}

TEST_CASE("erf_real basics") {
    CHECK(sf::erf_real(0.0) == 0.0);
    CHECK(sf::erf_real(1.765) == doctest::Approx(0.9874428178542802).epsilon(1e-12));
    for (double x : {0.3, 1.0, 2.5, 7.0}) CHECK(sf::erf_real(-x) == -sf::erf_real(x));
    CHECK_THROWS_AS(sf::erf_real(std::nan("")), std::invalid_argument);
}

TEST_CASE("erf_complex reference values and symmetries") {
    // series-oracle values (sum (-1)^n z^{2n+1} / (n! (2n+1)) * 2/sqrt(pi))
    const cd v1 = sf::erf_complex(cd(0.5, 0.5));
    CHECK(std::abs(v1 - cd(0.64261291485482053, 0.45788139443519221)) < 1e-12);
    const cd v2 = sf::erf_complex(cd(2.0, -1.0));
    CHECK(std::abs(v2 - cd(1.0036063427256519, 0.011259006028815025)) < 1e-12);
    const cd v3 = sf::erf_complex(cd(-3.0, 2.0));
    CHECK(std::abs(v3 - cd(-0.99896327885681724, -1.1546724379290603e-05)) < 1e-12);
    const cd v4 = sf::erf_complex(cd(4.0, 11.0));
    CHECK(std::abs(v4 - cd(-5.9881955384817292e+43, 1.8330943524637692e+44)) <
          1e-10 * std::abs(v4));

    // restriction to the real axis matches erf_real exactly
    for (double x : {-3.0, -0.7, 0.0, 1.2, 9.0})
        CHECK(std::abs(sf::erf_complex(cd(x, 0.0)) - cd(sf::erf_real(x), 0.0)) <= 1e-12);

    // Schwarz reflection
    rng::SubstreamRng r(3, 0);
    for (int i = 0; i < 50; ++i) {
        const cd z(6.0 * (r.uniform() - 0.5), 10.0 * (r.uniform() - 0.5));
        const cd a = sf::erf_complex(std::conj(z));
        const cd b = std::conj(sf::erf_complex(z));
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }

    CHECK_THROWS_AS(sf::erf_complex(cd(1.0, 12.5)), std::domain_error);
    CHECK_THROWS_AS(sf::erf_complex(cd(std::nan(""), 0.0)), std::invalid_argument);
}

TEST_CASE("erf_scaled matches exp(-v^2) erf(u+iv) and stays finite for large v") {
    const struct {
        double u, v;
        cd want;
    } table[] = {
        // frozen from a 40-digit oracle
        {1.0, 5.0, {-0.014980829445288443, -0.038660939114396116}},
        {0.3, -18.0, {-0.028042536396153273, 0.0060442583604259211}},
        {-2.0, 22.0, {2.5946323085310071e-05, 0.00046752863231659631}},
        {7.5, 3.0, {0.00012340980408667956, 2.5454775695230413e-26}},
    };
    for (const auto& t : table) {
        const cd got = sf::erf_scaled(t.u, t.v);
        CHECK(std::abs(got - t.want) <= 1e-12 * std::max(1e-6, std::abs(t.want)));
    }
    // strip where direct evaluation also works
    for (double v : {-4.0, -1.0, 0.5, 4.0}) {
        for (double u : {-2.0, 0.0, 1.3, 6.0}) {
            const cd direct = std::exp(-v * v) * sf::erf_complex(cd(u, v));
            CHECK(std::abs(sf::erf_scaled(u, v) - direct) <= 1e-11 * std::max(1.0, std::abs(direct)));
        }
    }
    CHECK(std::isfinite(std::abs(sf::erf_scaled(3.0, 200.0))));
}

TEST_CASE("f1 against its quadrature oracle") {
    CHECK(std::abs(sf::f1(0.8, 1.4, 1.4, 3.0)) == 0.0);  // empty interval
    // f1(1,1,-1,0) = sqrt(pi) erf(1)
    CHECK(std::abs(sf::f1(1.0, 1.0, -1.0, 0.0) -
                   cd(std::sqrt(M_PI) * std::erf(1.0), 0.0)) < 1e-14);

    rng::SubstreamRng r(11, 0);
    for (int i = 0; i < 50; ++i) {
        const double a = std::pow(10.0, -2.0 + 6.0 * r.uniform());
        const double scale = 1.0 / std::sqrt(a);
        double x = (2.0 * r.uniform() - 1.0) * 8.0 * scale;
        double y = (2.0 * r.uniform() - 1.0) * 8.0 * scale;
        const double z = (2.0 * r.uniform() - 1.0) * 40.0 * std::sqrt(a);
        const cd got = sf::f1(a, x, y, z);
        const cd want = f1_oracle(a, x, y, z);
        CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)) + 1e-12);
    }
    CHECK_THROWS_AS(sf::f1(0.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("f2 and f3") {
    CHECK(sf::f2(2.0, 0.7, 0.7) == 0.0);
    CHECK(sf::f3(2.0, 0.7, 0.7) == 0.0);
    // consistency with f1 at z = 0
    for (double x : {-1.0, 0.4, 2.0}) {
        CHECK(std::abs(sf::f2(1.3, x, -0.2) - sf::f1(1.3, x, -0.2, 0.0).real()) < 1e-13);
    }
    // int_0^1 t e^{-t^2} dt = (1 - 1/e)/2
    CHECK(sf::f3(1.0, 1.0, 0.0) == doctest::Approx((1.0 - std::exp(-1.0)) / 2.0).epsilon(1e-14));
    // antisymmetry and the quadrature oracle
    CHECK(sf::f3(0.7, 1.5, -0.3) == doctest::Approx(-sf::f3(0.7, -0.3, 1.5)).epsilon(1e-14));
    auto o = quadrature::integrate([](double t) { return t * std::exp(-0.7 * t * t); }, -0.3, 1.5);
    CHECK(sf::f3(0.7, 1.5, -0.3) == doctest::Approx(o.value.real()).epsilon(1e-12));
    // total Gaussian mass
    CHECK(sf::f2(1.0, 30.0, -30.0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(sf::f2(-1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sf::f3(-1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("g window properties and quadrature oracle") {
    const double T = 3.2e-3, alpha = 0.044;
    const double omega = 1.0 / std::sqrt(std::erf(M_PI / std::sqrt(2.0 * alpha)) -
                                         std::sqrt(2.0 * alpha / (M_PI * M_PI * M_PI)) *
                                             (1.0 - std::exp(-M_PI * M_PI / (2.0 * alpha))));
    // evenness
    for (double t : {0.1 * T, 0.45 * T, 0.8 * T, 2.0 * T})
        CHECK(sf::g_window(t, T, alpha, omega) ==
              doctest::Approx(sf::g_window(-t, T, alpha, omega)).epsilon(1e-14));
    // g(0) algebraic reduction
    CHECK(sf::g_window(0.0, T, alpha, omega) ==
          doctest::Approx(omega / std::sqrt(T) * std::erf(M_PI / (2.0 * std::sqrt(alpha))))
              .epsilon(1e-14));
    // decays and is monotone decreasing in |t| beyond T/2 (strictly, until it
    // underflows to zero)
    double prev = sf::g_window(0.5 * T, T, alpha, omega);
    for (double t = 0.55 * T; t < 2.0 * T; t += 0.05 * T) {
        const double cur = sf::g_window(t, T, alpha, omega);
        CHECK(cur <= prev);
        if (prev > 0.0) CHECK(cur < prev);
        prev = cur;
    }
    CHECK(sf::g_window(40.0 * T, T, alpha, omega) < 1e-280);

    // oracle: g(t) = int w2(nu) e^{j2pi nu t} dnu with w2 the GS Doppler factor
    auto w2 = [&](double nu) {
        const double x = T * nu;
        const double snc = std::abs(x) < 1e-12 ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
        return omega * std::sqrt(T) * snc * std::exp(-alpha * x * x);
    };
    rng::SubstreamRng r(5, 0);
    for (int i = 0; i < 20; ++i) {
        const double t = (2.0 * r.uniform() - 1.0) * 1.2 * T;
        auto f = [&](double nu) { return w2(nu) * std::cos(2.0 * M_PI * nu * t); };
        const double L = 34.0 / T;
        const double want =
            quadrature::integrate_or_throw(f, -L, L, 1e-13, 1e-11, 8000).real();
        CHECK(sf::g_window(t, T, alpha, omega) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("ErfAccuracy validation") {
    sf::ErfAccuracy ok;
    CHECK_NOTHROW(ok.validate());
    sf::ErfAccuracy bad{-1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
