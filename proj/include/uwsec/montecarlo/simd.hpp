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

#ifndef UWSEC_MONTECARLO_SIMD_HPP
#define UWSEC_MONTECARLO_SIMD_HPP

#include "uwsec/montecarlo/philox.hpp"

#include <cstddef>
#include <cstdint>

namespace uwsec::mc {

enum class SimdLevel { scalar, avx2 };

const char* simd_name(SimdLevel level);

// Batch kernels of the Monte Carlo core. Every variant returns results
// bit-identical to the scalar reference.
struct Kernels {
    SimdLevel level;

    // out[4 j + w] = word w of Philox(ctr = {lo(first + j), hi(first + j), stream, chunk}, key).
    void (*philox_fill)(PhiloxKey key, std::uint32_t stream, std::uint32_t chunk, std::uint64_t first_block,
                        std::size_t blocks, std::uint32_t* out);

    // out[i] = ((in[2i] >> 6) 2^26 + (in[2i+1] >> 6) + 1/2) 2^-52, strictly inside (0, 1).
    void (*u32_to_unit)(const std::uint32_t* in, std::size_t n, double* out);

    // Decode-and-forward end-to-end SNR: min_out = min(r, d) and
    // harm_out = r d / (r + d + 1).
    void (*combine_eq)(const double* r, const double* d, std::size_t n, double* min_out, double* harm_out);

    // Number of i with a[i] <= phi * b[i] + shift.
    std::uint64_t (*count_le)(const double* a, const double* b, std::size_t n, double phi, double shift);

    // Number of i with a1[i] <= phi * b1[i] + s1 or a2[i] <= phi * b2[i] + s2.
    std::uint64_t (*count_union)(const double* a1, const double* b1, double s1, const double* a2,
                                 const double* b2, double s2, std::size_t n, double phi);
};

const Kernels& scalar_kernels();

// Null when the AVX2 variant is not compiled in or the CPU lacks AVX2.
const Kernels* avx2_kernels();

// Best available variant; the UWSEC_SIMD environment variable ("scalar" or
// "avx2") overrides the choice, read once.
const Kernels& kernels();

} // namespace uwsec::mc

#endif
