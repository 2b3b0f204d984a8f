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

// AVX2 kernels; compiled with -mavx2 -ffp-contract=off on x86-64 only.

#include "simd_internal.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace uwsec::mc::detail {

namespace {

// 32x32 -> 64 bit products of all eight lanes, split into high and low words.
inline void mulhilo(__m256i a, __m256i m, __m256i& hi, __m256i& lo)
{
    const __m256i even = _mm256_mul_epu32(a, m);
    const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), m);
    lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
    hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

void philox_fill(PhiloxKey key, std::uint32_t stream, std::uint32_t chunk, std::uint64_t first_block,
                 std::size_t blocks, std::uint32_t* out)
{
    const __m256i m0 = _mm256_set1_epi32(static_cast<int>(kPhiloxM0));
    const __m256i m1 = _mm256_set1_epi32(static_cast<int>(kPhiloxM1));
    std::size_t j = 0;
    alignas(32) std::uint32_t w[4][8];
    for (; j + 8 <= blocks; j += 8) {
        alignas(32) std::uint32_t lo32[8], hi32[8];
        for (int l = 0; l < 8; ++l) {
            const std::uint64_t b = first_block + j + static_cast<std::uint64_t>(l);
            lo32[l] = static_cast<std::uint32_t>(b);
            hi32[l] = static_cast<std::uint32_t>(b >> 32);
        }
        __m256i x0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(lo32));
        __m256i x1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(hi32));
        __m256i x2 = _mm256_set1_epi32(static_cast<int>(stream));
        __m256i x3 = _mm256_set1_epi32(static_cast<int>(chunk));
        std::uint32_t k0 = key[0], k1 = key[1];
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k0 += kPhiloxW0;
                k1 += kPhiloxW1;
            }
            __m256i hi0, lo0, hi1, lo1;
            mulhilo(x0, m0, hi0, lo0);
            mulhilo(x2, m1, hi1, lo1);
            const __m256i y0 = _mm256_xor_si256(_mm256_xor_si256(hi1, x1), _mm256_set1_epi32(static_cast<int>(k0)));
            const __m256i y2 = _mm256_xor_si256(_mm256_xor_si256(hi0, x3), _mm256_set1_epi32(static_cast<int>(k1)));
            x0 = y0;
            x1 = lo1;
            x2 = y2;
            x3 = lo0;
        }
        _mm256_store_si256(reinterpret_cast<__m256i*>(w[0]), x0);
        _mm256_store_si256(reinterpret_cast<__m256i*>(w[1]), x1);
        _mm256_store_si256(reinterpret_cast<__m256i*>(w[2]), x2);
        _mm256_store_si256(reinterpret_cast<__m256i*>(w[3]), x3);
        for (int l = 0; l < 8; ++l)
            for (int c = 0; c < 4; ++c)
                out[4 * (j + static_cast<std::size_t>(l)) + static_cast<std::size_t>(c)] = w[c][l];
    }
    if (j < blocks)
        scalar_table().philox_fill(key, stream, chunk, first_block + j, blocks - j, out + 4 * j);
}

void u32_to_unit(const std::uint32_t* in, std::size_t n, double* out)
{
    const __m256i deinterleave = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
    const __m256d scale_hi = _mm256_set1_pd(67108864.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d unit = _mm256_set1_pd(0x1p-52);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in + 2 * i));
        v = _mm256_srli_epi32(_mm256_permutevar8x32_epi32(v, deinterleave), 6);
        const __m256d hi = _mm256_cvtepi32_pd(_mm256_castsi256_si128(v));
        const __m256d lo = _mm256_cvtepi32_pd(_mm256_extracti128_si256(v, 1));
        const __m256d r = _mm256_mul_pd(_mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(hi, scale_hi), lo), half), unit);
        _mm256_storeu_pd(out + i, r);
    }
    if (i < n)
        scalar_table().u32_to_unit(in + 2 * i, n - i, out + i);
}

void combine_eq(const double* r, const double* d, std::size_t n, double* min_out, double* harm_out)
{
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vr = _mm256_loadu_pd(r + i), vd = _mm256_loadu_pd(d + i);
        // min_pd(a, b) returns b unless a < b, the same selection as the scalar d < r ? d : r.
        _mm256_storeu_pd(min_out + i, _mm256_min_pd(vd, vr));
        const __m256d h = _mm256_div_pd(_mm256_mul_pd(vr, vd), _mm256_add_pd(_mm256_add_pd(vr, vd), one));
        _mm256_storeu_pd(harm_out + i, h);
    }
    if (i < n)
        scalar_table().combine_eq(r + i, d + i, n - i, min_out + i, harm_out + i);
}

inline __m256d le_mask(const double* a, const double* b, __m256d phi, __m256d shift)
{
    const __m256d rhs = _mm256_add_pd(_mm256_mul_pd(phi, _mm256_loadu_pd(b)), shift);
    return _mm256_cmp_pd(_mm256_loadu_pd(a), rhs, _CMP_LE_OQ);
}

std::uint64_t count_le(const double* a, const double* b, std::size_t n, double phi, double shift)
{
    const __m256d vp = _mm256_set1_pd(phi), vs = _mm256_set1_pd(shift);
    std::uint64_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        c += static_cast<std::uint64_t>(__builtin_popcount(_mm256_movemask_pd(le_mask(a + i, b + i, vp, vs))));
    if (i < n)
        c += scalar_table().count_le(a + i, b + i, n - i, phi, shift);
    return c;
}

std::uint64_t count_union(const double* a1, const double* b1, double s1, const double* a2, const double* b2,
                          double s2, std::size_t n, double phi)
{
    const __m256d vp = _mm256_set1_pd(phi), v1 = _mm256_set1_pd(s1), v2 = _mm256_set1_pd(s2);
    std::uint64_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d m = _mm256_or_pd(le_mask(a1 + i, b1 + i, vp, v1), le_mask(a2 + i, b2 + i, vp, v2));
        c += static_cast<std::uint64_t>(__builtin_popcount(_mm256_movemask_pd(m)));
    }
    if (i < n)
        c += scalar_table().count_union(a1 + i, b1 + i, s1, a2 + i, b2 + i, s2, n - i, phi);
    return c;
}

constexpr Kernels kTable{SimdLevel::avx2, philox_fill, u32_to_unit, combine_eq, count_le, count_union};

} // namespace

const Kernels* avx2_table()
{
    return &kTable;
}

} // namespace uwsec::mc::detail

#else

namespace uwsec::mc::detail {

const Kernels* avx2_table()
{
    return nullptr;
}

} // namespace uwsec::mc::detail

#endif
