// SPDX-License-Identifier: Apache-2.0

#include "zakotfs/rng.hpp"

#include <cmath>

namespace zakotfs::rng {

namespace {

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<uint32_t, 4>& ctr, const std::array<uint32_t, 2>& key) {
    const uint64_t p0 = static_cast<uint64_t>(kMul0) * ctr[0];
    const uint64_t p1 = static_cast<uint64_t>(kMul1) * ctr[2];
    const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
    const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key) {
    std::array<uint32_t, 4> ctr = counter;
    std::array<uint32_t, 2> k = key;
    for (int i = 0; i < 10; ++i) {
        round_once(ctr, k);
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return ctr;
}

SubstreamRng::SubstreamRng(uint64_t seed, uint64_t stream) {
    key_ = {static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)};
    counter_ = {0u, 0u, static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
}

void SubstreamRng::refill() {
    block_ = philox4x32(counter_, key_);
    pos_ = 0;
    if (++counter_[0] == 0) ++counter_[1];  // 64-bit block counter
}

uint32_t SubstreamRng::next_u32() {
    if (pos_ >= 4) refill();
    return block_[pos_++];
}

uint64_t SubstreamRng::next_u64() {
    const uint64_t lo = next_u32();
    const uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double SubstreamRng::uniform() {
    // 53-bit mantissa, shifted into (0, 1]
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double SubstreamRng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(th);
    has_cached_normal_ = true;
    return r * std::cos(th);
}

std::complex<double> SubstreamRng::cnormal() {
    // one Box-Muller pair per complex sample keeps draw order independent of
    // any cached leftover
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));  // E[re^2 + im^2] = 1
    const double th = 2.0 * M_PI * u2;
    return {r * std::cos(th), r * std::sin(th)};
}

}  // namespace zakotfs::rng
