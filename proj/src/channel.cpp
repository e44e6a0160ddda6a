// SPDX-License-Identifier: Apache-2.0

#include "zakotfs/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "zakotfs/quadrature.hpp"
#include "zakotfs/specfun.hpp"

namespace zakotfs {

using specfun::erf_scaled;
using specfun::f2;
using specfun::f3;

const std::array<double, 6> kVehADelaysSec = {0.0, 0.31e-6, 0.71e-6, 1.09e-6, 1.73e-6, 2.51e-6};
const std::array<double, 6> kVehARelPowersDb = {0.0, -1.0, -9.0, -10.0, -15.0, -20.0};

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double sinc(double x) {
    if (std::abs(x) < 1e-10) {
        const double px = M_PI * x;
        return 1.0 - px * px / 6.0;
    }
    return std::sin(M_PI * x) / (M_PI * x);
}

cd polar1(double ph) { return cd(std::cos(ph), std::sin(ph)); }

// ---- per-filter closed forms of the matched-filter factors ----
//
// I1(tau; tau_i, nu_i) = int w1(-t) w1(tau - tau_i - t) e^{-j2pi nu_i t} dt
// I2(tau, nu; nu_i)    = int w2(-v) w2(nu - nu_i - v) e^{+j2pi v tau} dv

struct SincForms {
    double B, T;
    cd I1(double d, double vi) const {
        const double av = std::abs(vi);
        if (av >= B) return 0.0;
        const double W = B - av;
        return (W / B) * polar1(-M_PI * vi * d) * sinc(W * d);
    }
    cd I2(double tau, double e) const {
        const double at = std::abs(tau);
        if (at >= T) return 0.0;
        const double W = T - at;
        return (W / T) * polar1(M_PI * e * tau) * sinc(e * W);
    }
};

struct GaussForms {
    double B, T, at, an;
    cd I1(double d, double vi) const {
        return std::exp(-0.5 * at * B * B * d * d) *
               std::exp(-M_PI * M_PI * vi * vi / (2.0 * at * B * B)) * polar1(-M_PI * vi * d);
    }
    cd I2(double tau, double e) const {
        return std::exp(-0.5 * an * T * T * e * e) *
               std::exp(-M_PI * M_PI * tau * tau / (2.0 * an * T * T)) * polar1(M_PI * e * tau);
    }
};

// Gaussian-sinc (f1/f2/f3 route). The generic branch carries a removable
// 1/(tau - tau_i) factor; inside |d| < 1e-8/B (resp. 1e-8/T for Doppler) the
// dedicated branch is used -- the generic branch would lose ~1e-16/(B d) to
// cancellation there, while the dedicated branch is off by only O(B d).
struct GsForms {
    double B, T, at, an, Ot, On;

    cd I1(double d, double vi) const {
        const double a1 = M_PI * M_PI / (2.0 * at * B * B);
        if (std::abs(d) * B < 1e-8) {
            const double C = Ot * Ot * std::sqrt(M_PI / (2.0 * at)) / (B * B);
            return C * ((B + vi) * f2(a1, B + vi, vi) - f3(a1, B + vi, vi) +
                        (B - vi) * f2(a1, vi, vi - B) + f3(a1, vi, vi - B));
        }
        const double sa = std::sqrt(a1);
        const double v = M_PI * d / (2.0 * sa);
        const double pre = kSqrtPi / (2.0 * sa);
        const cd e_hi = erf_scaled(sa * (B + vi), v);
        const cd e_mid = erf_scaled(sa * vi, v);
        const cd e_lo = erf_scaled(sa * (vi - B), v);
        const cd fa = pre * (e_hi - e_mid);  // f1(a1, B+vi, vi, pi d)
        const cd fb = pre * (e_mid - e_lo);  // f1(a1, vi, vi-B, pi d)
        const cd C = Ot * Ot * std::sqrt(M_PI / (2.0 * at)) *
                     std::exp(-0.5 * at * B * B * d * d) / cd(0.0, 2.0 * M_PI * B * B * d);
        // f1(.,.,., -z) = conj(f1(.,.,., z)) for real limits
        return C * (polar1(M_PI * B * d) * fa - polar1(-M_PI * (B + 2.0 * vi) * d) * std::conj(fa) +
                    polar1(M_PI * (B - 2.0 * vi) * d) * std::conj(fb) - polar1(-M_PI * B * d) * fb);
    }

    cd I2(double tau, double e) const {
        const double a2 = M_PI * M_PI / (2.0 * an * T * T);
        if (std::abs(e) * T < 1e-8) {
            const double C = On * On * std::sqrt(M_PI / (2.0 * an)) / (T * T);
            return C * ((T + tau) * f2(a2, tau + T, tau) - f3(a2, tau + T, tau) +
                        (T - tau) * f2(a2, tau, tau - T) + f3(a2, tau, tau - T));
        }
        const double sa = std::sqrt(a2);
        const double v = M_PI * e / (2.0 * sa);
        const double pre = kSqrtPi / (2.0 * sa);
        const cd e_hi = erf_scaled(sa * (tau + T), v);
        const cd e_mid = erf_scaled(sa * tau, v);
        const cd e_lo = erf_scaled(sa * (tau - T), v);
        const cd fa = pre * (e_hi - e_mid);  // f1(a2, tau+T, tau, pi e)
        const cd fb = pre * (e_mid - e_lo);  // f1(a2, tau, tau-T, pi e)
        const cd C = On * On * std::sqrt(M_PI / (2.0 * an)) *
                     std::exp(-0.5 * an * T * T * e * e) / cd(0.0, 2.0 * M_PI * T * T * e);
        return C * (polar1(M_PI * e * (T + 2.0 * tau)) * fa - polar1(-M_PI * e * T) * std::conj(fa) +
                    polar1(M_PI * e * T) * std::conj(fb) - polar1(-M_PI * e * (T - 2.0 * tau)) * fb);
    }
};

GsForms gs_forms(const PulseShape& s, const FrameParams& p) {
    return GsForms{p.bandwidth(), p.duration(), s.alpha_tau, s.alpha_nu, s.omega_tau, s.omega_nu};
}

// Dual-domain quadrature:
//   I1 = int U(f) U(f+nu_i) e^{j2pi f d} df
//   I2 = int V(t) V(t-tau)  e^{j2pi e t} dt
cd I1_by_quadrature(const PulseShape& s, const FrameParams& p, double d, double vi,
                    double epsrel) {
    const double F = u_support(s, p);
    const double lo = std::max(-F, -F - vi), hi = std::min(F, F - vi);
    if (lo >= hi) return 0.0;
    auto f = [&](double x) {
        return eval_u_dual(s, p, x) * eval_u_dual(s, p, x + vi) * polar1(2.0 * M_PI * x * d);
    };
    return quadrature::integrate_or_throw(f, lo, hi, 1e-13, epsrel, 6000);
}

cd I2_by_quadrature(const PulseShape& s, const FrameParams& p, double tau, double e,
                    double epsrel) {
    const double F = v_support(s, p);
    const double lo = std::max(-F, tau - F), hi = std::min(F, tau + F);
    if (lo >= hi) return 0.0;
    auto f = [&](double t) {
        return eval_v_dual(s, p, t) * eval_v_dual(s, p, t - tau) * polar1(2.0 * M_PI * e * t);
    };
    return quadrature::integrate_or_throw(f, lo, hi, 1e-13, epsrel, 6000);
}

template <typename Forms>
cd combine_paths(const Forms& forms, const PhysicalChannel& ch, double tau, double nu) {
    cd acc = 0.0;
    for (const auto& path : ch.paths) {
        const double d = tau - path.delay;
        const cd v1 = forms.I1(d, path.doppler);
        if (std::abs(v1) < 1e-300) continue;
        acc += path.gain * polar1(2.0 * M_PI * path.doppler * d) * v1 *
               forms.I2(tau, nu - path.doppler);
    }
    return acc;
}

struct QuadForms {
    const PulseShape& s;
    const FrameParams& p;
    double epsrel;
    cd I1(double d, double vi) const { return I1_by_quadrature(s, p, d, vi, epsrel); }
    cd I2(double tau, double e) const { return I2_by_quadrature(s, p, tau, e, epsrel); }
};

}  // namespace

PhysicalChannel sample_veh_a(rng::SubstreamRng& rng, double nu_max_hz, const FrameParams& p,
                             bool per_realization_norm) {
    if (nu_max_hz < 0.0) throw std::invalid_argument("sample_veh_a: nu_max must be >= 0");
    // crystalline regime: channel spreads inside one DD period
    if (kVehADelaysSec.back() >= p.tau_p() || nu_max_hz >= p.nu_p)
        throw std::invalid_argument("sample_veh_a: channel spread breaks the crystalline condition");

    double weights[6];
    double wsum = 0.0;
    for (int i = 0; i < 6; ++i) {
        weights[i] = std::pow(10.0, kVehARelPowersDb[i] / 10.0);
        wsum += weights[i];
    }
    PhysicalChannel ch;
    ch.paths.resize(6);
    double gain2 = 0.0;
    for (int i = 0; i < 6; ++i) {
        const cd g = rng.cnormal() * std::sqrt(weights[i] / wsum);
        const double theta = 2.0 * M_PI * rng.uniform();
        ch.paths[i] = PathTriple{g, kVehADelaysSec[i], nu_max_hz * std::cos(theta)};
        gain2 += std::norm(g);
    }
    if (per_realization_norm && gain2 > 0.0) {
        const double scale = 1.0 / std::sqrt(gain2);
        for (auto& path : ch.paths) path.gain *= scale;
    }
    return ch;
}

cd h_eff_quadrature(const PulseShape& s, const FrameParams& p, const PhysicalChannel& ch,
                    double tau, double nu, double epsrel) {
    return combine_paths(QuadForms{s, p, epsrel}, ch, tau, nu);
}

cd h_eff_gs_closed_form(const PulseShape& s, const FrameParams& p, const PhysicalChannel& ch,
                        double tau, double nu) {
    if (s.kind != FilterKind::GaussianSinc)
        throw std::invalid_argument("h_eff_gs_closed_form: filter kind must be GaussianSinc");
    return combine_paths(gs_forms(s, p), ch, tau, nu);
}

HEffEvaluator make_sim_evaluator(const PulseShape& s, const FrameParams& p,
                                 const PhysicalChannel& ch) {
    switch (s.kind) {
        case FilterKind::Sinc: {
            SincForms forms{p.bandwidth(), p.duration()};
            return [forms, ch](double tau, double nu) { return combine_paths(forms, ch, tau, nu); };
        }
        case FilterKind::Gaussian: {
            GaussForms forms{p.bandwidth(), p.duration(), s.alpha_tau, s.alpha_nu};
            return [forms, ch](double tau, double nu) { return combine_paths(forms, ch, tau, nu); };
        }
        case FilterKind::GaussianSinc: {
            GsForms forms = gs_forms(s, p);
            return [forms, ch](double tau, double nu) { return combine_paths(forms, ch, tau, nu); };
        }
        case FilterKind::Rrc:
            // pointwise evaluations go through quadrature; grid sampling has
            // the faster row-shared rule below
            return make_quadrature_evaluator(s, p, ch, 1e-10);
    }
    throw std::logic_error("make_sim_evaluator: unreachable");
}

HEffEvaluator make_quadrature_evaluator(const PulseShape& s, const FrameParams& p,
                                        const PhysicalChannel& ch, double epsrel) {
    return [s, p, ch, epsrel](double tau, double nu) {
        return h_eff_quadrature(s, p, ch, tau, nu, epsrel);
    };
}

cd HGrid::at(int k, int l) const {
    const int r = k - k_min, c = l - l_min;
    if (r < 0 || r >= vals.rows() || c < 0 || c >= vals.cols())
        throw std::out_of_range("HGrid::at: index outside the stored replica range");
    return vals(r, c);
}

cd& HGrid::at(int k, int l) {
    const int r = k - k_min, c = l - l_min;
    if (r < 0 || r >= vals.rows() || c < 0 || c >= vals.cols())
        throw std::out_of_range("HGrid::at: index outside the stored replica range");
    return vals(r, c);
}

HGrid HGrid::zeros(const FrameParams& p, int replica_range) {
    if (replica_range < 0) throw std::invalid_argument("HGrid: replica_range must be >= 0");
    HGrid g;
    g.M = p.M;
    g.N = p.N;
    g.k_min = -((replica_range + 1) * p.M - 1);
    g.l_min = -((replica_range + 1) * p.N - 1);
    g.vals = Eigen::MatrixXcd::Zero(-2 * g.k_min + 1, -2 * g.l_min + 1);
    return g;
}

namespace {

template <bool Parallel>
HGrid sample_h_grid_impl(const HEffEvaluator& eval, const FrameParams& p, int replica_range) {
    HGrid g = HGrid::zeros(p, replica_range);
    const int rows = static_cast<int>(g.vals.rows()), cols = static_cast<int>(g.vals.cols());
    const double dt = p.tau_p() / p.M, dv = p.nu_p / p.N;
#pragma omp parallel for schedule(dynamic, 1) if (Parallel)
    for (int r = 0; r < rows; ++r) {
        const double tau = (r + g.k_min) * dt;
        for (int c = 0; c < cols; ++c) {
            const double nu = (c + g.l_min) * dv;
            g.vals(r, c) = eval(tau, nu);
        }
    }
    return g;
}

// Grid sampling for separable closed forms: the delay factor I1 depends on
// the row only, so it is evaluated once per (row, path). Arithmetic per point
// is identical to combine_paths (same association order).
template <typename Forms>
HGrid sample_h_grid_forms(const Forms& forms, const PhysicalChannel& ch, const FrameParams& p,
                          bool parallel) {
    HGrid g = HGrid::zeros(p, 1);
    const int rows = static_cast<int>(g.vals.rows()), cols = static_cast<int>(g.vals.cols());
    const double dt = p.tau_p() / p.M, dv = p.nu_p / p.N;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (int r = 0; r < rows; ++r) {
        const double tau = (r + g.k_min) * dt;
        for (const auto& path : ch.paths) {
            const double d = tau - path.delay;
            const cd v1 = forms.I1(d, path.doppler);
            if (std::abs(v1) < 1e-300) continue;
            const cd lead = path.gain * polar1(2.0 * M_PI * path.doppler * d) * v1;
            for (int c = 0; c < cols; ++c) {
                const double nu = (c + g.l_min) * dv;
                g.vals(r, c) += lead * forms.I2(tau, nu - path.doppler);
            }
        }
    }
    return g;
}

// RRC grid sampling. Within one grid row (fixed tau) all Doppler samples of
// I2 share one set of integration nodes, so the oscillatory factor advances
// by a fixed per-node step from one Doppler bin to the next; same idea for
// I1 down the delay column. Panel count keeps each 15-point panel under one
// oscillation cycle.
HGrid sample_h_grid_rrc(const PulseShape& s, const FrameParams& p, const PhysicalChannel& ch,
                        bool parallel, int replica_range) {
    HGrid g = HGrid::zeros(p, replica_range);
    const int rows = static_cast<int>(g.vals.rows()), cols = static_cast<int>(g.vals.cols());
    const double dt = p.tau_p() / p.M, dv = p.nu_p / p.N;
    const double Fu = u_support(s, p), Ft = v_support(s, p);
    using quadrature::detail::kG15;

    // <= ~1.3 oscillation cycles per 15-point panel
    const double max_d = -g.k_min * dt + kVehADelaysSec.back();
    const int npan1 = std::max(32, static_cast<int>(std::ceil(0.75 * max_d * 2.0 * Fu)));
    const double max_e = (-g.l_min * dv) + p.nu_p;  // |nu - nu_i| bound
    const int npan2 = std::max(32, static_cast<int>(std::ceil(0.75 * max_e * 2.0 * Ft)));

    for (const auto& path : ch.paths) {
        const double vi = path.doppler;

        Eigen::VectorXcd I1col(rows);
        {
            const double lo = std::max(-Fu, -Fu - vi), hi = std::min(Fu, Fu - vi);
            std::vector<double> xs, ws;
            xs.reserve(npan1 * 15);
            ws.reserve(npan1 * 15);
            for (int pa = 0; pa < npan1; ++pa) {
                const double a = lo + (hi - lo) * pa / npan1;
                const double b = lo + (hi - lo) * (pa + 1) / npan1;
                for (const auto& nw : kG15) {
                    const double f = 0.5 * (a + b) + 0.5 * (b - a) * nw.x;
                    xs.push_back(f);
                    ws.push_back(0.5 * (b - a) * nw.w * eval_u_dual(s, p, f) *
                                 eval_u_dual(s, p, f + vi));
                }
            }
            for (int r = 0; r < rows; ++r) {
                const double d = (r + g.k_min) * dt - path.delay;
                cd acc = 0.0;
                for (size_t i = 0; i < xs.size(); ++i) acc += ws[i] * polar1(2.0 * M_PI * xs[i] * d);
                I1col(r) = acc;
            }
        }

#pragma omp parallel for schedule(dynamic, 1) if (parallel)
        for (int r = 0; r < rows; ++r) {
            if (std::abs(I1col(r)) < 1e-16) continue;
            const double tau = (r + g.k_min) * dt;
            const double lo = std::max(-Ft, tau - Ft), hi = std::min(Ft, tau + Ft);
            if (lo >= hi) continue;
            std::vector<double> wv;
            std::vector<cd> phase, step;
            wv.reserve(npan2 * 15);
            phase.reserve(npan2 * 15);
            step.reserve(npan2 * 15);
            const double e0 = g.l_min * dv - vi;
            for (int pa = 0; pa < npan2; ++pa) {
                const double a = lo + (hi - lo) * pa / npan2;
                const double b = lo + (hi - lo) * (pa + 1) / npan2;
                for (const auto& nw : kG15) {
                    const double t = 0.5 * (a + b) + 0.5 * (b - a) * nw.x;
                    wv.push_back(0.5 * (b - a) * nw.w * eval_v_dual(s, p, t) *
                                 eval_v_dual(s, p, t - tau));
                    phase.push_back(polar1(2.0 * M_PI * e0 * t));
                    step.push_back(polar1(2.0 * M_PI * dv * t));
                }
            }
            const cd lead = path.gain * polar1(2.0 * M_PI * vi * (tau - path.delay)) * I1col(r);
            for (int c = 0; c < cols; ++c) {
                cd acc = 0.0;
                for (size_t i = 0; i < wv.size(); ++i) {
                    acc += wv[i] * phase[i];
                    phase[i] *= step[i];
                }
                g.vals(r, c) += lead * acc;
            }
        }
    }
    return g;
}

}  // namespace

HGrid sample_h_grid(const HEffEvaluator& eval, const FrameParams& p) {
    return sample_h_grid_impl<true>(eval, p, 1);
}

HGrid sample_h_grid_serial(const HEffEvaluator& eval, const FrameParams& p) {
    return sample_h_grid_impl<false>(eval, p, 1);
}

HGrid sample_h_grid(const PulseShape& s, const FrameParams& p, const PhysicalChannel& ch) {
    switch (s.kind) {
        case FilterKind::Rrc:
            return sample_h_grid_rrc(s, p, ch, true, 1);
        case FilterKind::Sinc:
            return sample_h_grid_forms(SincForms{p.bandwidth(), p.duration()}, ch, p, true);
        case FilterKind::Gaussian:
            return sample_h_grid_forms(
                GaussForms{p.bandwidth(), p.duration(), s.alpha_tau, s.alpha_nu}, ch, p, true);
        case FilterKind::GaussianSinc:
            return sample_h_grid_forms(gs_forms(s, p), ch, p, true);
    }
    throw std::logic_error("sample_h_grid: unreachable");
}

namespace {

template <bool Parallel>
Eigen::MatrixXcd build_H_eff_impl(const HGrid& grid, const FrameParams& p, int r) {
    const int M = p.M, N = p.N, MN = M * N;
    if (grid.M != M || grid.N != N)
        throw std::invalid_argument("build_H_eff: grid/frame dimension mismatch");
    if (r < 0 || grid.k_min > -((r + 1) * M - 1) || grid.l_min > -((r + 1) * N - 1))
        throw std::invalid_argument("build_H_eff: replica range exceeds stored grid");
    Eigen::MatrixXcd H(MN, MN);

    std::vector<cd> roots(MN);  // e^{j2pi t/MN}
    for (int t = 0; t < MN; ++t) roots[t] = polar1(2.0 * M_PI * t / MN);
    auto root_at = [&](long t) { return roots[static_cast<int>(((t % MN) + MN) % MN)]; };

#pragma omp parallel for schedule(static) if (Parallel)
    for (int col = 0; col < MN; ++col) {
        const int k = col / N, l = col % N;
        for (int kp = 0; kp < M; ++kp) {
            for (int lp = 0; lp < N; ++lp) {
                cd acc = 0.0;
                for (int n = -r; n <= r; ++n) {
                    const cd phn = root_at(static_cast<long>(n) * l * M);  // e^{j2pi n l/N}
                    const long knM = k + static_cast<long>(n) * M;
                    for (int m = -r; m <= r; ++m) {
                        const int dl = lp - l - m * N;
                        acc += grid.at(kp - k - n * M, dl) * phn * root_at(static_cast<long>(dl) * knM);
                    }
                }
                H(kp * N + lp, col) = acc;
            }
        }
    }
    return H;
}

}  // namespace

Eigen::MatrixXcd build_H_eff(const HGrid& grid, const FrameParams& p, int replica_range) {
    return build_H_eff_impl<true>(grid, p, replica_range);
}

Eigen::MatrixXcd build_H_eff_serial(const HGrid& grid, const FrameParams& p, int replica_range) {
    return build_H_eff_impl<false>(grid, p, replica_range);
}

EffectiveChannel make_effective_channel(const PulseShape& s, const FrameParams& p,
                                        const PhysicalChannel& ch, int replica_range) {
    EffectiveChannel ec;
    ec.h_grid = sample_h_grid(s, p, ch);
    ec.H = build_H_eff(ec.h_grid, p, replica_range);
    return ec;
}

}  // namespace zakotfs
