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

#ifndef UWSEC_MONTECARLO_RNG_HPP
#define UWSEC_MONTECARLO_RNG_HPP

#include "uwsec/montecarlo/simd.hpp"

#include <array>
#include <cstdint>

namespace uwsec::mc {

struct RngSeed {
    std::uint64_t seed = 0;
    std::uint32_t stream_id = 0;
};

// Uniform stream over one (seed, stream, chunk) substream of Philox4x32-10.
// The block counter starts at 0, so identical arguments always replay the
// same sequence whichever kernel variant fills the buffer.
class Rng {
public:
    explicit Rng(RngSeed seed, std::uint32_t chunk = 0, const Kernels& k = kernels());

    // Uniform on (0, 1) with 2^-52 resolution; never 0 or 1.
    double uniform()
    {
        if (pos_ == kDoubles)
            refill();
        return buf_[pos_++];
    }

    std::uint64_t blocks_used() const { return next_block_; }

private:
    static constexpr std::size_t kBlocks = 64;
    static constexpr std::size_t kDoubles = 2 * kBlocks;

    void refill();

    const Kernels* k_;
    PhiloxKey key_;
    std::uint32_t stream_;
    std::uint32_t chunk_;
    std::uint64_t next_block_ = 0;
    std::size_t pos_ = kDoubles;
    std::array<std::uint32_t, 4 * kBlocks> raw_{};
    std::array<double, kDoubles> buf_{};
};

} // namespace uwsec::mc

#endif
