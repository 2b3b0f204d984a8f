// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include "uwsec/montecarlo/philox.hpp"
#include "uwsec/montecarlo/rng.hpp"

#include <cmath>
#include <set>
#include <vector>

using namespace uwsec::mc;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu})
          == PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u})
          == PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("seed splits into the two key words")
{
    CHECK(philox_key(0x0123456789abcdefULL) == PhiloxKey{0x89abcdefu, 0x01234567u});
}

TEST_CASE("uniforms are built from consecutive counter blocks")
{
    const RngSeed seed{42, 7};
    Rng rng(seed, 3);
    const PhiloxKey key = philox_key(42);
    for (std::uint32_t block = 0; block < 70; ++block) {
        const PhiloxCounter w = philox4x32_10({block, 0, 7, 3}, key);
        for (int half = 0; half < 2; ++half) {
            const double expect =
                ((w[2 * half] >> 6) * 67108864.0 + (w[2 * half + 1] >> 6) + 0.5) * std::ldexp(1.0, -52);
            CHECK(rng.uniform() == expect);
        }
    }
    CHECK(rng.blocks_used() == 128);
}

TEST_CASE("identical seeds reproduce, distinct streams and chunks differ")
{
    auto draw = [](RngSeed s, std::uint32_t chunk) {
        Rng r(s, chunk);
        std::vector<double> v(1000);
        for (double& x : v)
            x = r.uniform();
        return v;
    };
    const auto a = draw({1, 0}, 0);
    CHECK(a == draw({1, 0}, 0));
    CHECK(a != draw({1, 1}, 0));
    CHECK(a != draw({1, 0}, 1));
    CHECK(a != draw({2, 0}, 0));
    CHECK(a != draw({1ULL << 32, 0}, 0));
}

TEST_CASE("uniforms stay inside the open unit interval with the right moments")
{
    Rng r({9, 0});
    const int n = 1000000;
    double s = 0.0, s2 = 0.0, lo = 1.0, hi = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        s += u;
        s2 += u * u;
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    const double mean = s / n, var = s2 / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(var - 1.0 / 12.0) < 1e-3);
}

TEST_CASE("extreme words map strictly inside the interval")
{
    const std::uint32_t zero[2] = {0, 0}, ones[2] = {0xffffffffu, 0xffffffffu};
    double a = 0.0, b = 0.0;
    scalar_kernels().u32_to_unit(zero, 1, &a);
    scalar_kernels().u32_to_unit(ones, 1, &b);
    CHECK(a == std::ldexp(0.5, -52));
    CHECK(b == 1.0 - std::ldexp(0.5, -52));
}
