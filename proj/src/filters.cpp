// SPDX-License-Identifier: Apache-2.0

#include "zakotfs/filters.hpp"

#include <cmath>
#include <stdexcept>

#include "zakotfs/quadrature.hpp"
#include "zakotfs/specfun.hpp"

namespace zakotfs {

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-10) {
        const double px = M_PI * x;
        return 1.0 - px * px / 6.0;
    }
    return std::sin(M_PI * x) / (M_PI * x);
}

// Root-raised-cosine shape in normalized units,
//   rrc_b(x) = [sin(pi x (1-b)) + 4 b x cos(pi x (1+b))] / [pi x (1 - (4 b x)^2)],
// with the x = 0 and |4 b x| = 1 removable singularities filled by limits.
double rrc_shape(double x, double b) {
    if (b == 0.0) return sinc(x);
    const double ax = std::abs(x);
    if (ax < 1e-8) return 1.0 - b + 4.0 * b / M_PI;
    if (std::abs(4.0 * b * ax - 1.0) < 1e-8) {
        const double c = M_PI / (4.0 * b);
        return b / std::sqrt(2.0) *
               ((1.0 + 2.0 / M_PI) * std::sin(c) + (1.0 - 2.0 / M_PI) * std::cos(c));
    }
    const double fx = 4.0 * b * x;
    return (std::sin(M_PI * x * (1.0 - b)) + fx * std::cos(M_PI * x * (1.0 + b))) /
           (M_PI * x * (1.0 - fx * fx));
}

// Square-root raised-cosine spectrum in normalized frequency (unit symbol
// rate): 1 on the flat region, cosine roll-off, 0 outside. For b = 0 this is
// the unit rect with midpoint value at the edge (Fourier inversion value).
double sqrt_rc_spectrum(double u, double b) {
    const double au = std::abs(u);
    if (b == 0.0) {
        if (std::abs(au - 0.5) < 1e-12) return 0.5;
        return au < 0.5 ? 1.0 : 0.0;
    }
    const double lo = 0.5 * (1.0 - b), hi = 0.5 * (1.0 + b);
    if (au <= lo) return 1.0;
    if (au >= hi) return 0.0;
    return std::cos(M_PI * (au - lo) / (2.0 * b));
}

// Raised-cosine pulse (inverse FT of the squared spectrum above); Nyquist:
// zero at nonzero integers. Needed by the noise module via filter
// autocorrelations, kept here with its spectrum.
[[maybe_unused]] double rc_pulse(double x, double b) {
    if (b == 0.0) return sinc(x);
    const double d = 2.0 * b * std::abs(x);
    if (std::abs(d - 1.0) < 1e-8) return sinc(x) * M_PI / 4.0;
    return sinc(x) * std::cos(M_PI * b * x) / (1.0 - d * d);
}

void check_shape(const PulseShape& s) {
    switch (s.kind) {
        case FilterKind::Rrc:
            if (s.beta_tau < 0.0 || s.beta_tau > 1.0 || s.beta_nu < 0.0 || s.beta_nu > 1.0)
                throw std::invalid_argument("PulseShape: RRC roll-offs must lie in [0, 1]");
            break;
        case FilterKind::Gaussian:
        case FilterKind::GaussianSinc:
            if (!(s.alpha_tau > 0.0) || !(s.alpha_nu > 0.0))
                throw std::invalid_argument("PulseShape: alpha parameters must be positive");
            break;
        default:
            break;
    }
}

}  // namespace

double gs_normalization(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("gs_normalization: alpha must be positive");
    const double e = std::erf(M_PI / std::sqrt(2.0 * alpha));
    const double corr =
        std::sqrt(2.0 * alpha / (M_PI * M_PI * M_PI)) * (1.0 - std::exp(-M_PI * M_PI / (2.0 * alpha)));
    return 1.0 / std::sqrt(e - corr);
}

PulseShape PulseShape::sinc() { return PulseShape{FilterKind::Sinc, 0, 0, 0, 0, 1, 1}; }

PulseShape PulseShape::rrc(double bt, double bn) {
    PulseShape s{FilterKind::Rrc, bt, bn, 0, 0, 1, 1};
    check_shape(s);
    return s;
}

PulseShape PulseShape::gaussian(double alpha) { return gaussian(alpha, alpha); }

PulseShape PulseShape::gaussian(double at, double an) {
    PulseShape s{FilterKind::Gaussian, 0, 0, at, an, 1, 1};
    check_shape(s);
    return s;
}

PulseShape PulseShape::gaussian_sinc(double alpha) { return gaussian_sinc(alpha, alpha); }

PulseShape PulseShape::gaussian_sinc(double at, double an) {
    PulseShape s{FilterKind::GaussianSinc, 0, 0, at, an, 1, 1};
    check_shape(s);
    s.omega_tau = gs_normalization(at);
    s.omega_nu = gs_normalization(an);
    return s;
}

namespace {

// Shared delay/Doppler factor: "rate" is B for w1, T for w2.
double eval_factor(const PulseShape& s, double rate, double arg, double beta, double alpha,
                   double omega) {
    const double x = rate * arg;
    const double sr = std::sqrt(rate);
    switch (s.kind) {
        case FilterKind::Sinc:
            return sr * sinc(x);
        case FilterKind::Rrc:
            return sr * rrc_shape(x, beta);
        case FilterKind::Gaussian:
            return std::pow(2.0 * alpha * rate * rate / M_PI, 0.25) * std::exp(-alpha * x * x);
        case FilterKind::GaussianSinc:
            return omega * sr * sinc(x) * std::exp(-alpha * x * x);
    }
    return 0.0;
}

// Shared dual: U(f) for w1 (rate = B) or V(t) for w2 (rate = T).
double eval_dual(const PulseShape& s, double rate, double arg, double beta, double alpha,
                 double omega) {
    const double u = arg / rate;  // normalized
    const double isr = 1.0 / std::sqrt(rate);
    switch (s.kind) {
        case FilterKind::Sinc:
            return isr * sqrt_rc_spectrum(u, 0.0);
        case FilterKind::Rrc:
            return isr * sqrt_rc_spectrum(u, beta);
        case FilterKind::Gaussian:
            return std::pow(2.0 * M_PI / (alpha * rate * rate), 0.25) *
                   std::exp(-M_PI * M_PI * u * u / alpha);
        case FilterKind::GaussianSinc:
            // rect (x) Gaussian = erf-difference window
            return specfun::g_window(arg, rate, alpha, omega);
    }
    return 0.0;
}

double dual_halfwidth(const PulseShape& s, double rate, double beta, double alpha) {
    // |dual| < ~1e-14 of peak beyond this
    switch (s.kind) {
        case FilterKind::Sinc:
            return 0.5 * rate;
        case FilterKind::Rrc:
            return 0.5 * rate * (1.0 + beta);
        case FilterKind::Gaussian:
            // exp(-pi^2 u^2 / alpha) small
            return rate * std::sqrt(32.3 * alpha) / M_PI;
        case FilterKind::GaussianSinc:
            // erf window edge + complementary-error tail
            return rate * (0.5 + 5.5 * std::sqrt(alpha) / M_PI);
    }
    return rate;
}

double primal_halfwidth(const PulseShape& s, double rate, double alpha) {
    switch (s.kind) {
        case FilterKind::Gaussian:
        case FilterKind::GaussianSinc:
            return std::sqrt(32.3 / alpha) / rate;
        default:
            // sinc/RRC decay like 1/x: no useful truncation; callers integrate
            // these in the dual domain where support is exact
            return 1e9 / rate;
    }
}

}  // namespace

double eval_w1(const PulseShape& s, const FrameParams& p, double tau) {
    return eval_factor(s, p.bandwidth(), tau, s.beta_tau, s.alpha_tau, s.omega_tau);
}

double eval_w2(const PulseShape& s, const FrameParams& p, double nu) {
    return eval_factor(s, p.duration(), nu, s.beta_nu, s.alpha_nu, s.omega_nu);
}

double eval_u_dual(const PulseShape& s, const FrameParams& p, double f) {
    return eval_dual(s, p.bandwidth(), f, s.beta_tau, s.alpha_tau, s.omega_tau);
}

double eval_v_dual(const PulseShape& s, const FrameParams& p, double t) {
    return eval_dual(s, p.duration(), t, s.beta_nu, s.alpha_nu, s.omega_nu);
}

double w1_support(const PulseShape& s, const FrameParams& p) {
    return primal_halfwidth(s, p.bandwidth(), s.alpha_tau);
}

double w2_support(const PulseShape& s, const FrameParams& p) {
    return primal_halfwidth(s, p.duration(), s.alpha_nu);
}

double u_support(const PulseShape& s, const FrameParams& p) {
    return dual_halfwidth(s, p.bandwidth(), s.beta_tau, s.alpha_tau);
}

double v_support(const PulseShape& s, const FrameParams& p) {
    return dual_halfwidth(s, p.duration(), s.beta_nu, s.alpha_nu);
}

cd MatchedRx::operator()(double tau, double nu) const {
    const double mag = eval_w1(shape, params, tau) * eval_w2(shape, params, nu);
    const double ph = 2.0 * M_PI * nu * tau;
    return mag * cd(std::cos(ph), std::sin(ph));
}

MatchedRx matched_rx(const PulseShape& s, const FrameParams& p) {
    check_shape(s);
    return MatchedRx{s, p};
}

ExpansionFactors expansion_factors(const PulseShape& s, const FrameParams& p) {
    if (s.kind == FilterKind::Rrc)
        return {p.bandwidth() * (1.0 + s.beta_tau), p.duration() * (1.0 + s.beta_nu)};
    return {p.bandwidth(), p.duration()};
}

std::pair<double, double> energy_containment(const PulseShape& s, const FrameParams& p) {
    const double B = p.bandwidth(), T = p.duration();
    const double fmax = u_support(s, p), tmax = v_support(s, p);
    auto u2 = [&](double f) { return std::norm(eval_u_dual(s, p, f)); };
    auto v2 = [&](double t) { return std::norm(eval_v_dual(s, p, t)); };
    const double in_b = quadrature::integrate(u2, -0.5 * B, 0.5 * B, 1e-12, 1e-11).value.real();
    const double tot_b =
        in_b + quadrature::integrate(u2, 0.5 * B, fmax, 1e-13, 1e-11).value.real() +
        quadrature::integrate(u2, -fmax, -0.5 * B, 1e-13, 1e-11).value.real();
    const double in_t = quadrature::integrate(v2, -0.5 * T, 0.5 * T, 1e-12, 1e-11).value.real();
    const double tot_t =
        in_t + quadrature::integrate(v2, 0.5 * T, tmax, 1e-13, 1e-11).value.real() +
        quadrature::integrate(v2, -tmax, -0.5 * T, 1e-13, 1e-11).value.real();
    return {in_b / tot_b, in_t / tot_t};
}

}  // namespace zakotfs
