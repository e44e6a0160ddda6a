// SPDX-License-Identifier: Apache-2.0

#include "zakotfs/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace zakotfs::specfun {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kInvSqrtPi = 0.5641895835477562869;

// Weideman (1994) rational-approximation coefficients, N = 40, computed from
// the FFT construction in the original paper. Highest power first.
constexpr double kWeidemanL = 5.3182958969449885;
constexpr double kWeidemanA[40] = {
    -1.73569809987918647e-15, 1.20167491075928095e-15,
    1.15191702207494847e-14,  -5.23171636632440398e-15,
    -7.07108802215940845e-14, 1.37782240476640457e-14,
    4.53414489094346555e-13,  1.20333095291956798e-13,
    -2.90771851041427015e-12, -2.72777356258302445e-12,
    1.77141856738671790e-11,  3.47274209389070152e-11,
    -9.05513886095832302e-11, -3.56323504036026841e-10,
    2.10859907312510581e-10,  3.01778042555156406e-09,
    3.24974658294507890e-09,  -1.83156168342968342e-08,
    -6.35177348301541098e-08, 1.41986423729534295e-08,
    5.91213695302905726e-07,  1.48356611331720142e-06,
    -1.06601389841627292e-06, -1.80074471447234073e-05,
    -5.59130926423487940e-05, -3.93936314548380510e-05,
    4.39807015986967025e-04,  2.70540563307372899e-03,
    1.00481862427835352e-02,  2.92029164712418812e-02,
    7.18236177907432827e-02,  1.55042638024795038e-01,
    2.99894379961500590e-01,  5.26652898827708604e-01,
    8.47217457659381501e-01,  1.25638156757651331e+00,
    1.72538308481797786e+00,  2.20151379487831189e+00,
    2.61605415276185971e+00,  2.89962450938970484e+00,
};

cd faddeeva_weideman(cd z) {
    const cd iz(-z.imag(), z.real());
    const cd denom = kWeidemanL - iz;
    const cd Z = (kWeidemanL + iz) / denom;
    cd p = 0.0;
    for (double c : kWeidemanA) p = p * Z + c;
    return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

cd faddeeva_contfrac(cd z) {
    cd r = 0.0;
    for (int n = 24; n >= 1; --n) r = (0.5 * n) / (z - r);
    return cd(0.0, kInvSqrtPi) / (z - r);
}

}  // namespace

void ErfAccuracy::validate() const {
    if (!(target_abs_error > 0.0))
        throw std::invalid_argument("ErfAccuracy: target must be positive");
}

double erf_real(double x) {
    if (std::isnan(x)) throw std::invalid_argument("erf_real: NaN input");
    return std::erf(x);
}

cd faddeeva_w(cd z) {
    // Callers guarantee Im(z) >= 0; both sub-methods are valid on that closure.
    if (std::norm(z) >= 256.0) return faddeeva_contfrac(z);
    return faddeeva_weideman(z);
}

cd erf_scaled(double u, double v) {
    if (u < 0.0) return -erf_scaled(-u, -v);
    // exp(-v^2) erf(u+iv) = exp(-v^2) - exp(-u^2) exp(-2iuv) w(-v + iu)
    const double vv = v * v;
    const double ev = vv > 745.0 ? 0.0 : std::exp(-vv);
    const cd w = faddeeva_w(cd(-v, u));
    const double eu = std::exp(-u * u);
    const cd phase(std::cos(2.0 * u * v), -std::sin(2.0 * u * v));
    return cd(ev, 0.0) - eu * phase * w;
}

cd erf_complex(cd z) {
    if (std::isnan(z.real()) || std::isnan(z.imag()))
        throw std::invalid_argument("erf_complex: NaN input");
    if (z.imag() == 0.0) return cd(std::erf(z.real()), 0.0);
    if (std::abs(z.imag()) > 12.0)
        throw std::domain_error("erf_complex: |Im z| > 12 exceeds the validated strip");
    if (z.real() < 0.0) return -erf_complex(-z);
    const cd iz(-z.imag(), z.real());
    return 1.0 - std::exp(-z * z) * faddeeva_w(iz);
}

cd f1(double a, double x, double y, double z) {
    if (!(a > 0.0)) throw std::invalid_argument("f1: a must be positive");
    const double sa = std::sqrt(a);
    const double v = z / (2.0 * sa);  // exp(-z^2/4a) = exp(-v^2), folded into erf_scaled
    return kSqrtPi / (2.0 * sa) * (erf_scaled(sa * x, v) - erf_scaled(sa * y, v));
}

double f2(double a, double x, double y) {
    if (!(a > 0.0)) throw std::invalid_argument("f2: a must be positive");
    const double sa = std::sqrt(a);
    return kSqrtPi / (2.0 * sa) * (std::erf(sa * x) - std::erf(sa * y));
}

double f3(double a, double x, double y) {
    if (!(a > 0.0)) throw std::invalid_argument("f3: a must be positive");
    return (std::exp(-a * y * y) - std::exp(-a * x * x)) / (2.0 * a);
}

double g_window(double t, double T, double alpha, double omega) {
    if (!(alpha > 0.0)) throw std::invalid_argument("g_window: alpha must be positive");
    const double c = M_PI / (std::sqrt(alpha) * T);
    return omega / (2.0 * std::sqrt(T)) * (std::erf(c * (t + 0.5 * T)) - std::erf(c * (t - 0.5 * T)));
}

}  // namespace zakotfs::specfun
