// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "zakotfs/rng.hpp"

using namespace zakotfs;


// Known-answer vectors from the Random123 reference distribution.
TEST_CASE("philox4x32-10 reference vectors") {
    auto r = rng::philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(r[0] == 0x6627e8d5u);
    CHECK(r[1] == 0xe169c58du);
    CHECK(r[2] == 0xbc57ac4cu);
    CHECK(r[3] == 0x9b00dbd8u);

    r = rng::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                        {0xffffffffu, 0xffffffffu});
    CHECK(r[0] == 0x408f276du);
    CHECK(r[1] == 0x41c83b0eu);
    CHECK(r[2] == 0xa20bc7c6u);
    CHECK(r[3] == 0x6d5451fdu);

    r = rng::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                        {0xa4093822u, 0x299f31d0u});
    CHECK(r[0] == 0xd16cfe09u);
    CHECK(r[1] == 0x94fdccebu);
    CHECK(r[2] == 0x5001e420u);
    CHECK(r[3] == 0x24126ea1u);
}

TEST_CASE("substreams are reproducible and independent") {
    rng::SubstreamRng a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u32() == b.next_u32());

    rng::SubstreamRng c(42, 8), a2(42, 7);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += (a2.next_u32() == c.next_u32());
    CHECK(same < 4);
}

TEST_CASE("uniform lies in (0,1], normals have the right moments") {
    rng::SubstreamRng r(1, 0);
    const int n = 200000;
    double mean = 0.0, var = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
        mean += u;
    }
    CHECK(std::abs(mean / n - 0.5) < 0.005);

    mean = 0.0;
    std::vector<double> xs(n);
    for (auto& x : xs) {
        x = r.normal();
        mean += x;
    }
    mean /= n;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= n;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);

    double cvar = 0.0;
    std::complex<double> acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const std::complex<double> z = r.cnormal();
        cvar += std::norm(z);
        acc += z;
    }
    CHECK(std::abs(cvar / n - 1.0) < 0.02);
    CHECK(std::abs(acc) / n < 0.01);
}

TEST_CASE("trial_stream keys points and trials apart") {
    CHECK(rng::trial_stream(0, 0) != rng::trial_stream(0, 1));
    CHECK(rng::trial_stream(0, 0) != rng::trial_stream(1, 0));
    CHECK(rng::trial_stream(3, 12345) == rng::trial_stream(3, 12345));
}
