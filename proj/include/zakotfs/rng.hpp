// SPDX-License-Identifier: Apache-2.0
//
// Counter-based RNG (Philox4x32-10) with keyed substreams. A substream is
// fully determined by (seed, stream id), so Monte-Carlo trials can be
// scheduled on any thread in any order without changing their draws.

#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace zakotfs::rng {

/// One Philox4x32-10 block: 128-bit counter + 64-bit key -> 128 random bits.
std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key);

class SubstreamRng {
  public:
    SubstreamRng(uint64_t seed, uint64_t stream);

    uint32_t next_u32();
    uint64_t next_u64();

    /// Uniform on (0, 1] (safe for log()).
    double uniform();

    /// Standard normal via Box-Muller.
    double normal();

    /// Circularly symmetric complex normal, E|z|^2 = 1.
    std::complex<double> cnormal();

  private:
    void refill();

    std::array<uint32_t, 2> key_;
    std::array<uint32_t, 4> counter_;  // [0..1]: block index, [2..3]: stream id
    std::array<uint32_t, 4> block_{};
    int pos_ = 4;  // force refill on first draw
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

/// Substream id for trial `trial` of sweep point `point`; keeps the
/// (seed, point, trial) -> stream mapping in one place.
inline uint64_t trial_stream(uint32_t point, uint64_t trial) {
    return (static_cast<uint64_t>(point) << 40) | (trial & ((uint64_t{1} << 40) - 1));
}

}  // namespace zakotfs::rng
