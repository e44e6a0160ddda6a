// SPDX-License-Identifier: Apache-2.0
//
// Special functions used by the closed-form effective-channel and
// noise-covariance expressions: real/complex error function (Faddeeva-based),
// the Gaussian-segment integrals f1/f2/f3, and the erf-difference window g.

#pragma once

#include <complex>

namespace zakotfs::specfun {

using cd = std::complex<double>;

/// Accuracy contract for the error-function implementations.
struct ErfAccuracy {
    double target_abs_error = 1e-12;
    void validate() const;  // throws std::invalid_argument unless positive
};

/// Real error function. Absolute error well below 1e-12 (delegates to std::erf).
/// NaN input is rejected with std::invalid_argument.
double erf_real(double x);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im(z) >= 0.
/// Weideman rational approximation (N=40) for |z| < 16, descending continued
/// fraction beyond. Relative error ~1e-13 over the validated region.
cd faddeeva_w(cd z);

/// Analytic continuation of erf. Validated for |Im z| <= 12 (absolute error
/// <= 1e-10 there, typically ~1e-13 relative); arguments outside the strip
/// throw std::domain_error instead of silently losing accuracy.
cd erf_complex(cd z);

/// Scaled error function E(u, v) = exp(-v^2) * erf(u + iv).
/// Stable for arbitrarily large |v| (the exp(-v^2) damping is folded into the
/// Faddeeva evaluation instead of being multiplied on afterwards). This is the
/// building block f1 uses; it has no strip restriction.
cd erf_scaled(double u, double v);

/// f1(a,x,y,z) = int_y^x exp(-a t^2 - i z t) dt, a > 0.
cd f1(double a, double x, double y, double z);

/// f2(a,x,y) = int_y^x exp(-a t^2) dt, a > 0.
double f2(double a, double x, double y);

/// f3(a,x,y) = int_y^x t exp(-a t^2) dt = (exp(-a y^2) - exp(-a x^2)) / 2a.
/// Argument order is integral-limits order (upper first), consistent with
/// f1/f2; callers translating printed forward-integral notation swap args.
double f3(double a, double x, double y);

/// Erf-difference window
///   g(t) = Omega/(2 sqrt(T)) * [erf(c(t + T/2)) - erf(c(t - T/2))],
/// c = pi/(sqrt(alpha) T). Even in t, decays to 0 beyond |t| ~ T/2.
double g_window(double t, double T, double alpha, double omega);

}  // namespace zakotfs::specfun
