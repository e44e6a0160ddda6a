// SPDX-License-Identifier: Apache-2.0

#include "zakotfs/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "zakotfs/quadrature.hpp"
#include "zakotfs/specfun.hpp"

namespace zakotfs {

using specfun::f2;

namespace {

cd polar1(double ph) { return cd(std::cos(ph), std::sin(ph)); }

double sinc(double x) {
    if (std::abs(x) < 1e-10) {
        const double px = M_PI * x;
        return 1.0 - px * px / 6.0;
    }
    return std::sin(M_PI * x) / (M_PI * x);
}

// raised-cosine pulse: inverse FT of the squared sqrt-RC spectrum (Nyquist)
double rc_pulse(double x, double b) {
    if (b == 0.0) return sinc(x);
    const double d = 2.0 * b * std::abs(x);
    if (std::abs(d - 1.0) < 1e-8) return sinc(x) * M_PI / 4.0;
    return sinc(x) * std::cos(M_PI * b * x) / (1.0 - d * d);
}

// g and S value tables; the assembly below is agnostic of how they were
// produced (closed form vs quadrature).
struct CovTables {
    int Q = 0, DQ = 0;
    Eigen::MatrixXd g;  // M x (2Q+1):   g[k][q+Q]   = V(k tau_p/M + q tau_p)
    Eigen::MatrixXd S;  // (2M-1) x (2DQ+1): S[dk+M-1][dq+DQ] at lag (dk/M + dq) tau_p
};

template <typename GFn, typename SFn>
CovTables build_tables(const FrameParams& p, int Q, int DQ, GFn&& gfn, SFn&& sfn) {
    CovTables t;
    t.Q = Q;
    t.DQ = DQ;
    t.g.resize(p.M, 2 * Q + 1);
    const double tp = p.tau_p();
    for (int k = 0; k < p.M; ++k)
        for (int q = -Q; q <= Q; ++q) t.g(k, q + Q) = gfn((static_cast<double>(k) / p.M + q) * tp);
    t.S.resize(2 * p.M - 1, 2 * DQ + 1);
    for (int dk = -(p.M - 1); dk <= p.M - 1; ++dk)
        for (int dq = -DQ; dq <= DQ; ++dq)
            t.S(dk + p.M - 1, dq + DQ) =
                (dk == 0 && dq == 0) ? sfn(0.0) : sfn((static_cast<double>(dk) / p.M + dq) * tp);
    return t;
}

// Direct double q-sum for one entry: the serial reference.
cd cov_entry_from_tables(const CovTables& t, const FrameParams& p, int k1, int l1, int k2,
                         int l2) {
    const int Q = t.Q, DQ = t.DQ;
    cd acc = 0.0;
    for (int q1 = -Q; q1 <= Q; ++q1) {
        const double g1 = t.g(k1, q1 + Q);
        if (g1 == 0.0) continue;
        for (int dq = -DQ; dq <= DQ; ++dq) {
            const int q2 = q1 + dq;
            if (q2 < -Q || q2 > Q) continue;
            const double g2 = t.g(k2, q2 + Q);
            if (g2 == 0.0) continue;
            const double s = t.S(k2 - k1 + p.M - 1, dq + DQ);
            if (s == 0.0) continue;
            acc += polar1(2.0 * M_PI * (static_cast<double>(q2) * l2 - static_cast<double>(q1) * l1) /
                          p.N) *
                   (g1 * g2 * s);
        }
    }
    return p.tau_p() * acc;
}

// Table-based full assembly:
//   A[k1][k2][dq][dl] = sum_q1 e^{j2pi q1 dl/N} g[k1][q1] g[k2][q1+dq]
//   C[(k1,l1),(k2,l2)] = tau_p sum_dq S[k2-k1][dq] e^{j2pi dq l2/N}
//                        A[k1][k2][dq][(l2-l1) mod N]
template <bool Parallel>
Eigen::MatrixXcd assemble_cov(const CovTables& t, const FrameParams& p) {
    const int M = p.M, N = p.N, MN = M * N;
    const int Q = t.Q, DQ = t.DQ, nk = 2 * DQ + 1;

    std::vector<cd> ph(N);  // e^{j2pi q/N}
    for (int q = 0; q < N; ++q) ph[q] = polar1(2.0 * M_PI * q / N);
    auto ph_at = [&](long q) { return ph[static_cast<int>(((q % N) + N) % N)]; };

    Eigen::MatrixXcd A(static_cast<long>(M) * M * nk, N);
#pragma omp parallel for schedule(static) if (Parallel)
    for (int k1 = 0; k1 < M; ++k1) {
        for (int k2 = 0; k2 < M; ++k2) {
            for (int dq = -DQ; dq <= DQ; ++dq) {
                const long row = (static_cast<long>(k1) * M + k2) * nk + (dq + DQ);
                for (int dl = 0; dl < N; ++dl) {
                    cd acc = 0.0;
                    for (int q1 = -Q; q1 <= Q; ++q1) {
                        const int q2 = q1 + dq;
                        if (q2 < -Q || q2 > Q) continue;
                        const double gg = t.g(k1, q1 + Q) * t.g(k2, q2 + Q);
                        if (gg == 0.0) continue;
                        acc += ph_at(static_cast<long>(q1) * dl) * gg;
                    }
                    A(row, dl) = acc;
                }
            }
        }
    }

    Eigen::MatrixXcd C(MN, MN);
#pragma omp parallel for schedule(static) if (Parallel)
    for (int i1 = 0; i1 < MN; ++i1) {
        const int k1 = i1 / N, l1 = i1 % N;
        for (int i2 = i1; i2 < MN; ++i2) {
            const int k2 = i2 / N, l2 = i2 % N;
            const int dl = ((l2 - l1) % N + N) % N;
            cd acc = 0.0;
            for (int dq = -DQ; dq <= DQ; ++dq) {
                const double s = t.S(k2 - k1 + M - 1, dq + DQ);
                if (s == 0.0) continue;
                const long row = (static_cast<long>(k1) * M + k2) * nk + (dq + DQ);
                acc += s * ph_at(static_cast<long>(dq) * l2) * A(row, dl);
            }
            C(i1, i2) = p.tau_p() * acc;
            C(i2, i1) = std::conj(C(i1, i2));
        }
    }
    // exact real diagonal
    for (int i = 0; i < MN; ++i) C(i, i) = C(i, i).real();
    return C;
}

double g_closed(const PulseShape& s, const FrameParams& p, double t) { return eval_v_dual(s, p, t); }

double g_by_quadrature(const PulseShape& s, const FrameParams& p, double t) {
    switch (s.kind) {
        case FilterKind::Gaussian:
        case FilterKind::GaussianSinc: {
            const double L = w2_support(s, p);
            auto f = [&](double v) { return eval_w2(s, p, v) * std::cos(2.0 * M_PI * v * t); };
            return quadrature::integrate_or_throw(f, -L, L, 1e-13, 1e-10, 6000).real();
        }
        default:
            // sinc/RRC: the primal integral converges only conditionally;
            // the Fourier-inversion value is the defining one
            return eval_v_dual(s, p, t);
    }
}

double s_by_quadrature(const PulseShape& s, const FrameParams& p, double x) {
    const double F = u_support(s, p);
    auto f = [&](double fr) { return std::norm(eval_u_dual(s, p, fr)) * std::cos(2.0 * M_PI * fr * x); };
    return quadrature::integrate_or_throw(f, -F, F, 1e-13, 1e-10, 6000).real();
}

}  // namespace

int default_q_range(const PulseShape& s, const FrameParams& p) {
    return static_cast<int>(std::ceil(p.N * v_support(s, p) / p.duration())) + 1;
}

int default_dq_range(const PulseShape& s, const FrameParams& p) {
    switch (s.kind) {
        case FilterKind::Sinc:
        case FilterKind::Rrc:
            // on-grid lags are integer multiples of 1/B where the Nyquist
            // autocorrelation vanishes
            return 1;
        default:
            return static_cast<int>(std::ceil(8.1 / (std::sqrt(s.alpha_tau) * p.M))) + 1;
    }
}

double w1_autocorr_closed(const PulseShape& s, const FrameParams& p, double x) {
    const double B = p.bandwidth();
    switch (s.kind) {
        case FilterKind::Sinc:
            return sinc(B * x);
        case FilterKind::Rrc:
            return rc_pulse(B * x, s.beta_tau);
        case FilterKind::Gaussian:
            return std::exp(-0.5 * s.alpha_tau * B * B * x * x);
        case FilterKind::GaussianSinc: {
            const double at = s.alpha_tau, Ot = s.omega_tau;
            const double a1 = M_PI * M_PI / (2.0 * at * B * B);
            if (std::abs(x) * B < 1e-8) {
                // S at zero lag: the unit-energy value
                const double C = Ot * Ot * std::sqrt(M_PI / (2.0 * at)) / (B * B);
                const double s1 = f2(a1, B, 0.0);
                const double s2 = (1.0 - std::exp(-a1 * B * B)) / (2.0 * a1);
                return C * (2.0 * B * s1 - 2.0 * s2);
            }
            // four f1 terms collapse pairwise (f1 over [-B,0] with flipped z
            // equals f1 over [0,B]): S = C31 * 2 (t1 - conj(t1)) = C31 * 4j Im(t1)
            const cd t1 = polar1(M_PI * B * x) * specfun::f1(a1, B, 0.0, M_PI * x);
            return Ot * Ot * std::sqrt(M_PI / (2.0 * at)) * std::exp(-0.5 * at * B * B * x * x) *
                   2.0 * t1.imag() / (M_PI * x * B * B);
        }
    }
    throw std::logic_error("w1_autocorr_closed: unreachable");
}

cd noise_cov_entry_gs(int k1, int l1, int k2, int l2, const FrameParams& p, const PulseShape& gs,
                      double N0, int q_range) {
    if (gs.kind != FilterKind::GaussianSinc)
        throw std::invalid_argument("noise_cov_entry_gs: filter kind must be GaussianSinc");
    if (k1 < 0 || k1 >= p.M || k2 < 0 || k2 >= p.M || l1 < 0 || l1 >= p.N || l2 < 0 || l2 >= p.N)
        throw std::out_of_range("noise_cov_entry_gs: grid indices out of range");
    const int Q = q_range > 0 ? q_range : default_q_range(gs, p);
    const int DQ = default_dq_range(gs, p);
    const CovTables t = build_tables(
        p, Q, DQ, [&](double tt) { return g_closed(gs, p, tt); },
        [&](double x) { return w1_autocorr_closed(gs, p, x); });
    return N0 * cov_entry_from_tables(t, p, k1, l1, k2, l2);
}

namespace {

template <bool Parallel>
NoiseCovariance cov_closed_impl(const PulseShape& s, const FrameParams& p, double N0,
                                int q_range) {
    const int Q = q_range > 0 ? q_range : default_q_range(s, p);
    const int DQ = default_dq_range(s, p);
    const CovTables t = build_tables(
        p, Q, DQ, [&](double tt) { return g_closed(s, p, tt); },
        [&](double x) { return w1_autocorr_closed(s, p, x); });
    return NoiseCovariance{assemble_cov<Parallel>(t, p), N0};
}

}  // namespace

NoiseCovariance noise_cov_closed(const PulseShape& s, const FrameParams& p, double N0,
                                 int q_range) {
    return cov_closed_impl<true>(s, p, N0, q_range);
}

NoiseCovariance noise_cov_closed_serial(const PulseShape& s, const FrameParams& p, double N0,
                                        int q_range) {
    return cov_closed_impl<false>(s, p, N0, q_range);
}

NoiseCovariance noise_cov_quadrature(const PulseShape& s, const FrameParams& p, double N0,
                                     int q_range) {
    const int Q = q_range > 0 ? q_range : default_q_range(s, p);
    const int DQ = default_dq_range(s, p);
    const CovTables t = build_tables(
        p, Q, DQ, [&](double tt) { return g_by_quadrature(s, p, tt); },
        [&](double x) { return s_by_quadrature(s, p, x); });
    return NoiseCovariance{assemble_cov<true>(t, p), N0};
}

NoiseCovariance noise_cov_white(const FrameParams& p, double N0) {
    return NoiseCovariance{Eigen::MatrixXcd::Identity(p.grid_size(), p.grid_size()), N0};
}

NoiseFactor noise_factor(const NoiseCovariance& cov) {
    Eigen::LLT<Eigen::MatrixXcd> llt(cov.C_unit);
    if (llt.info() == Eigen::Success)
        return NoiseFactor{llt.matrixL(), 0.0};

    // tiny negative eigenvalues from sum truncation: clamp to zero
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cov.C_unit);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("noise_factor: eigendecomposition failed");
    Eigen::VectorXd lam = es.eigenvalues();
    double clamped = 0.0, trace = lam.cwiseAbs().sum();
    for (int i = 0; i < lam.size(); ++i) {
        if (lam(i) < 0.0) {
            clamped += -lam(i);
            lam(i) = 0.0;
        }
    }
    const Eigen::MatrixXcd L = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
    return NoiseFactor{L, trace > 0.0 ? clamped / trace : 0.0};
}

DdVector sample_noise(const NoiseFactor& f, double N0, const FrameParams& p,
                      rng::SubstreamRng& rng) {
    Eigen::VectorXcd z(p.grid_size());
    for (int i = 0; i < z.size(); ++i) z(i) = rng.cnormal();
    DdVector out;
    out.M = p.M;
    out.N = p.N;
    out.v = std::sqrt(N0) * (f.L_unit * z);
    return out;
}

DdVector sample_correlated_noise(const NoiseCovariance& cov, const FrameParams& p,
                                 rng::SubstreamRng& rng) {
    return sample_noise(noise_factor(cov), cov.N0, p, rng);
}

}  // namespace zakotfs
