// SPDX-License-Identifier: Apache-2.0
//
// Adaptive panel quadrature with an embedded 7/15-point Gauss pair.
// Worst-error panel is bisected until the summed estimate meets tolerance.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace zakotfs::quadrature {

struct Result {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;  // achieved absolute error estimate
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

struct NodeWeight {
    double x, w;
};

inline constexpr NodeWeight kG7[7] = {
    {-9.49107912342758486e-01, 1.29484966168870647e-01},
    {-7.41531185599394460e-01, 2.79705391489276589e-01},
    {-4.05845151377397184e-01, 3.81830050505118312e-01},
    {0.00000000000000000e+00, 4.17959183673468959e-01},
    {4.05845151377397184e-01, 3.81830050505118312e-01},
    {7.41531185599394460e-01, 2.79705391489276589e-01},
    {9.49107912342758486e-01, 1.29484966168870647e-01},
};

inline constexpr NodeWeight kG15[15] = {
    {-9.87992518020485377e-01, 3.07532419961186465e-02},
    {-9.37273392400705951e-01, 7.03660474881080689e-02},
    {-8.48206583410427206e-01, 1.07159220467171773e-01},
    {-7.24417731360170070e-01, 1.39570677926153908e-01},
    {-5.70972172608538830e-01, 1.66269205816993781e-01},
    {-3.94151347077563385e-01, 1.86161000015561878e-01},
    {-2.01194093997434514e-01, 1.98431485327111246e-01},
    {0.00000000000000000e+00, 2.02578241925560898e-01},
    {2.01194093997434514e-01, 1.98431485327111246e-01},
    {3.94151347077563385e-01, 1.86161000015561878e-01},
    {5.70972172608538830e-01, 1.66269205816993781e-01},
    {7.24417731360170070e-01, 1.39570677926153908e-01},
    {8.48206583410427206e-01, 1.07159220467171773e-01},
    {9.37273392400705951e-01, 7.03660474881080689e-02},
    {9.87992518020485377e-01, 3.07532419961186465e-02},
};

struct Panel {
    double a, b;
    std::complex<double> value;
    double error;
};

template <typename F>
Panel evaluate_panel(F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::complex<double> g7 = 0.0, g15 = 0.0;
    for (const auto& nw : kG7) g7 += nw.w * f(mid + half * nw.x);
    for (const auto& nw : kG15) g15 += nw.w * f(mid + half * nw.x);
    g7 *= half;
    g15 *= half;
    return Panel{a, b, g15, std::abs(g15 - g7)};
}

}  // namespace detail

/// Integrate f over [a, b]. f may return double or std::complex<double>.
template <typename F>
Result integrate(F&& f, double a, double b, double epsabs = 1e-12,
                 double epsrel = 1e-12, int max_panels = 4000) {
    Result out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::vector<detail::Panel> panels;
    panels.reserve(64);
    panels.push_back(detail::evaluate_panel(f, a, b));
    out.evaluations = 22;

    while (true) {
        std::complex<double> total = 0.0;
        double err = 0.0;
        for (const auto& p : panels) {
            total += p.value;
            err += p.error;
        }
        out.value = total;
        out.error = err;
        if (err <= std::max(epsabs, epsrel * std::abs(total))) {
            out.converged = true;
            return out;
        }
        if (static_cast<int>(panels.size()) >= max_panels) return out;

        auto worst = std::max_element(
            panels.begin(), panels.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.error < y.error; });
        const double wa = worst->a, wb = worst->b;
        const double mid = 0.5 * (wa + wb);
        *worst = detail::evaluate_panel(f, wa, mid);
        panels.push_back(detail::evaluate_panel(f, mid, wb));
        out.evaluations += 44;
    }
}

/// Convenience wrapper that throws when the tolerance is not reached; the
/// message carries the achieved error estimate.
template <typename F>
std::complex<double> integrate_or_throw(F&& f, double a, double b, double epsabs = 1e-12,
                                        double epsrel = 1e-12, int max_panels = 4000) {
    Result r = integrate(std::forward<F>(f), a, b, epsabs, epsrel, max_panels);
    if (!r.converged)
        throw std::runtime_error("quadrature did not converge; achieved error estimate " +
                                 std::to_string(r.error));
    return r.value;
}

}  // namespace zakotfs::quadrature
