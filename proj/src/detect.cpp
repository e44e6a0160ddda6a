// SPDX-License-Identifier: Apache-2.0

#include "zakotfs/detect.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace zakotfs {

Constellation Constellation::bpsk() {
    Constellation c;
    c.kind = ConstellationKind::Bpsk;
    c.points = {cd(1.0, 0.0), cd(-1.0, 0.0)};  // bit 0 -> +1, bit 1 -> -1
    c.bits_per_symbol = 1;
    return c;
}

Constellation Constellation::qam8() {
    Constellation c;
    c.kind = ConstellationKind::Qam8;
    c.bits_per_symbol = 3;
    // real in {-3,-1,1,3}, Gray 00/01/11/10 on bits (b0 b1); imag {-1,1}, b2
    const double s = 1.0 / std::sqrt(6.0);  // E[re^2] = 5, E[im^2] = 1
    const double re_of[4] = {-3.0, -1.0, 3.0, 1.0};  // index = (b0<<1)|b1
    c.points.resize(8);
    for (int b = 0; b < 8; ++b) {
        const int b01 = b >> 1;
        const double im = (b & 1) ? 1.0 : -1.0;
        c.points[b] = s * cd(re_of[b01], im);
    }
    return c;
}

std::vector<cd> map_bits(std::span<const uint8_t> bits, const Constellation& c) {
    if (bits.size() % c.bits_per_symbol != 0)
        throw std::invalid_argument("map_bits: bit count not divisible by bits/symbol");
    std::vector<cd> out(bits.size() / c.bits_per_symbol);
    for (size_t i = 0; i < out.size(); ++i) {
        int label = 0;
        for (int b = 0; b < c.bits_per_symbol; ++b)
            label = (label << 1) | (bits[i * c.bits_per_symbol + b] & 1);
        out[i] = c.points[label];
    }
    return out;
}

std::vector<uint8_t> demap_hard(std::span<const cd> symbols, const Constellation& c) {
    std::vector<uint8_t> out;
    out.reserve(symbols.size() * c.bits_per_symbol);
    for (const cd& s : symbols) {
        int best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < c.points.size(); ++j) {
            const double d = std::norm(s - c.points[j]);
            if (d < bd) {
                bd = d;
                best = static_cast<int>(j);
            }
        }
        for (int b = c.bits_per_symbol - 1; b >= 0; --b)
            out.push_back(static_cast<uint8_t>((best >> b) & 1));
    }
    return out;
}

std::vector<double> demap_llr(std::span<const cd> symbols, std::span<const double> noise_var,
                              const Constellation& c) {
    if (symbols.size() != noise_var.size())
        throw std::invalid_argument("demap_llr: symbol/variance count mismatch");
    std::vector<double> llrs;
    llrs.reserve(symbols.size() * c.bits_per_symbol);
    for (size_t i = 0; i < symbols.size(); ++i) {
        const double inv = 1.0 / std::max(noise_var[i], 1e-300);
        for (int b = c.bits_per_symbol - 1; b >= 0; --b) {
            double d0 = std::numeric_limits<double>::infinity();
            double d1 = std::numeric_limits<double>::infinity();
            for (size_t j = 0; j < c.points.size(); ++j) {
                const double d = std::norm(symbols[i] - c.points[j]);
                if ((j >> b) & 1)
                    d1 = std::min(d1, d);
                else
                    d0 = std::min(d0, d);
            }
            llrs.push_back((d1 - d0) * inv);  // > 0 favours bit 0
        }
    }
    return llrs;
}

MmseResult mmse_equalize(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& y,
                         const Eigen::MatrixXcd& C_n, double Es) {
    const Eigen::Index rows = H.rows(), cols = H.cols();
    if (y.size() != rows || C_n.rows() != rows || C_n.cols() != rows)
        throw std::invalid_argument("mmse_equalize: dimension mismatch");
    if (!(Es > 0.0)) throw std::invalid_argument("mmse_equalize: Es must be positive");

    Eigen::MatrixXcd A = C_n;
    A.selfadjointView<Eigen::Lower>().rankUpdate(H, Es);  // A = Es H H^H + C_n
    Eigen::LLT<Eigen::MatrixXcd> llt(A);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mmse_equalize: system matrix not positive definite (singular)");

    // W = L^{-1} H, so mu_i = Es ||w_i||^2 and x_hat = Es W^H (L^{-1} y)
    Eigen::MatrixXcd W = H;
    llt.matrixL().solveInPlace(W);
    Eigen::VectorXcd z = y;
    llt.matrixL().solveInPlace(z);

    MmseResult r;
    r.x_hat = Es * (W.adjoint() * z);
    r.mu.resize(cols);
    for (Eigen::Index i = 0; i < cols; ++i) r.mu(i) = Es * W.col(i).squaredNorm();
    r.x_unbiased.resize(cols);
    r.noise_var.resize(cols);
    for (Eigen::Index i = 0; i < cols; ++i) {
        const double mu = std::min(std::max(r.mu(i), 1e-300), 1.0);
        r.x_unbiased(i) = r.x_hat(i) / mu;
        r.noise_var(i) = Es * (1.0 - mu) / mu;
    }
    return r;
}

namespace {

constexpr int kConstraint = 7;
constexpr int kStates = 1 << (kConstraint - 1);  // 64
constexpr uint32_t kGen1 = 0133;                 // octal
constexpr uint32_t kGen2 = 0171;

inline int parity(uint32_t x) { return __builtin_popcount(x) & 1; }

}  // namespace

std::vector<uint8_t> fec_encode(std::span<const uint8_t> bits) {
    std::vector<uint8_t> out;
    out.reserve(2 * (bits.size() + kConstraint - 1));
    uint32_t reg = 0;  // last 6 bits
    auto push = [&](uint8_t b) {
        reg = ((reg << 1) | (b & 1)) & ((1u << kConstraint) - 1);
        out.push_back(static_cast<uint8_t>(parity(reg & kGen1)));
        out.push_back(static_cast<uint8_t>(parity(reg & kGen2)));
    };
    for (uint8_t b : bits) push(b);
    for (int i = 0; i < kConstraint - 1; ++i) push(0);  // terminate
    return out;
}

std::vector<uint8_t> viterbi_decode(std::span<const double> llrs) {
    if (llrs.size() % 2 != 0) throw std::invalid_argument("viterbi_decode: odd LLR count");
    const int steps = static_cast<int>(llrs.size() / 2);
    if (steps < kConstraint - 1) throw std::invalid_argument("viterbi_decode: block too short");

    // trellis outputs for (state, input)
    static const auto outputs = [] {
        std::array<std::array<std::pair<uint8_t, uint8_t>, 2>, kStates> t{};
        for (int s = 0; s < kStates; ++s) {
            for (int in = 0; in < 2; ++in) {
                const uint32_t reg = (static_cast<uint32_t>(s) << 1) | in;  // oldest..newest
                t[s][in] = {static_cast<uint8_t>(parity(reg & kGen1)),
                            static_cast<uint8_t>(parity(reg & kGen2))};
            }
        }
        return t;
    }();

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> metric(kStates, kInf), next(kStates);
    metric[0] = 0.0;
    std::vector<std::vector<uint8_t>> decisions(steps, std::vector<uint8_t>(kStates));

    for (int t = 0; t < steps; ++t) {
        const double l1 = llrs[2 * t], l2 = llrs[2 * t + 1];
        // branch cost of coded bit c against LLR l: c ? l : 0 (minimize)
        std::fill(next.begin(), next.end(), kInf);
        for (int s = 0; s < kStates; ++s) {
            if (metric[s] == kInf) continue;
            for (int in = 0; in < 2; ++in) {
                const auto [c1, c2] = outputs[s][in];
                const double m = metric[s] + (c1 ? l1 : 0.0) + (c2 ? l2 : 0.0);
                // new state: shift input into the register, drop oldest bit
                const int ns = ((s << 1) | in) & (kStates - 1);
                if (m < next[ns]) {
                    next[ns] = m;
                    decisions[t][ns] = static_cast<uint8_t>((s >> (kConstraint - 2)) & 1);
                    // store the *oldest* register bit so traceback can recover
                    // the predecessor; the input bit equals ns & 1
                }
            }
        }
        metric.swap(next);
    }

    // terminated block: end in state 0
    std::vector<uint8_t> bits(steps);
    int state = 0;
    for (int t = steps - 1; t >= 0; --t) {
        bits[t] = static_cast<uint8_t>(state & 1);  // input bit that produced `state`
        const int oldest = decisions[t][state];
        state = (state >> 1) | (oldest << (kConstraint - 2));
    }
    bits.resize(steps - (kConstraint - 1));  // drop tail
    return bits;
}

}  // namespace zakotfs
