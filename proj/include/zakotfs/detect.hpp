// SPDX-License-Identifier: Apache-2.0
//
// Constellations, linear MMSE equalization with colored noise, max-log LLR
// demapping, and the rate-1/2 constraint-length-7 convolutional code with a
// soft-input Viterbi decoder.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zakotfs/frame.hpp"

namespace zakotfs {

enum class ConstellationKind { Bpsk, Qam8 };

struct Constellation {
    ConstellationKind kind = ConstellationKind::Bpsk;
    std::vector<cd> points;  // unit average energy; index = bit label value
    int bits_per_symbol = 1;

    static Constellation bpsk();
    /// Rectangular 2x4, Gray labelled on each axis, unit average energy.
    static Constellation qam8();
};

std::vector<cd> map_bits(std::span<const uint8_t> bits, const Constellation& c);
std::vector<uint8_t> demap_hard(std::span<const cd> symbols, const Constellation& c);

/// Max-log LLRs, one per bit, from unbiased symbol estimates with per-symbol
/// effective noise variances. Positive LLR favours bit 0.
std::vector<double> demap_llr(std::span<const cd> symbols, std::span<const double> noise_var,
                              const Constellation& c);

struct MmseResult {
    Eigen::VectorXcd x_hat;      // raw MMSE output, x_hat = Es H^H A^{-1} y
    Eigen::VectorXcd x_unbiased; // x_hat_i / mu_i
    Eigen::VectorXd mu;          // diag of Es H^H A^{-1} H, in (0, 1)
    Eigen::VectorXd noise_var;   // per-symbol post-equalization variance Es (1-mu)/mu
};

/// Linear MMSE in covariance form, A = Es H H^H + C_n. H may be tall
/// (more observations than symbols). Throws when A is not positive definite
/// (singular system); no silent regularization.
MmseResult mmse_equalize(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& y,
                         const Eigen::MatrixXcd& C_n, double Es);

/// Rate-1/2 convolutional code, constraint length 7, generators (133, 171)
/// octal, terminated with 6 tail zeros: output size 2*(bits + 6).
std::vector<uint8_t> fec_encode(std::span<const uint8_t> bits);

/// Soft-input Viterbi over coded-bit LLRs (positive = bit 0); expects a
/// terminated block, returns the information bits.
std::vector<uint8_t> viterbi_decode(std::span<const double> llrs);

}  // namespace zakotfs
