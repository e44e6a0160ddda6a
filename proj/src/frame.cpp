// SPDX-License-Identifier: Apache-2.0

#include "zakotfs/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace zakotfs {

FrameParams FrameParams::make(int M, int N, double nu_p_hz) {
    if (M <= 0 || N <= 0) throw std::invalid_argument("FrameParams: M, N must be positive");
    if (M % 2 != 0 || N % 2 != 0)
        throw std::invalid_argument("FrameParams: M, N must be even (pilot sits at (M/2, N/2))");
    if (!(nu_p_hz > 0.0)) throw std::invalid_argument("FrameParams: nu_p must be positive");
    return FrameParams{M, N, nu_p_hz};
}

int flat_index(const FrameParams& p, int k, int l) {
    if (k < 0 || k >= p.M || l < 0 || l >= p.N)
        throw std::out_of_range("flat_index: (k, l) outside the fundamental grid");
    return k * p.N + l;
}

cd quasi_periodic_value(const DdVector& x, const FrameParams& p, int k, int l) {
    const int n = floor_div(k, p.M);
    const int k0 = k - n * p.M;
    const int l0 = floor_mod(l, p.N);
    const double phase = 2.0 * M_PI * n * l0 / p.N;
    return x.at(k0, l0) * cd(std::cos(phase), std::sin(phase));
}

}  // namespace zakotfs
