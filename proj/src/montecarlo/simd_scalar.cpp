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

// Reference kernels. Built with -ffp-contract=off so that a * b + c is
// never fused, matching the explicit mul/add sequence of the vector code.

#include "simd_internal.hpp"

#include <algorithm>

namespace uwsec::mc::detail {

namespace {

void philox_fill(PhiloxKey key, std::uint32_t stream, std::uint32_t chunk, std::uint64_t first_block,
                 std::size_t blocks, std::uint32_t* out)
{
    for (std::size_t j = 0; j < blocks; ++j) {
        const std::uint64_t b = first_block + j;
        const PhiloxCounter r = philox4x32_10(
            {static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32), stream, chunk}, key);
        std::copy(r.begin(), r.end(), out + 4 * j);
    }
}

void u32_to_unit(const std::uint32_t* in, std::size_t n, double* out)
{
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = static_cast<double>(in[2 * i] >> 6);
        const double lo = static_cast<double>(in[2 * i + 1] >> 6);
        out[i] = (hi * 67108864.0 + lo + 0.5) * 0x1p-52;
    }
}

void combine_eq(const double* r, const double* d, std::size_t n, double* min_out, double* harm_out)
{
    for (std::size_t i = 0; i < n; ++i) {
        min_out[i] = d[i] < r[i] ? d[i] : r[i];
        harm_out[i] = (r[i] * d[i]) / ((r[i] + d[i]) + 1.0);
    }
}

std::uint64_t count_le(const double* a, const double* b, std::size_t n, double phi, double shift)
{
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        c += a[i] <= phi * b[i] + shift;
    return c;
}

std::uint64_t count_union(const double* a1, const double* b1, double s1, const double* a2, const double* b2,
                          double s2, std::size_t n, double phi)
{
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        c += (a1[i] <= phi * b1[i] + s1) | (a2[i] <= phi * b2[i] + s2);
    return c;
}

constexpr Kernels kTable{SimdLevel::scalar, philox_fill, u32_to_unit, combine_eq, count_le, count_union};

} // namespace

const Kernels& scalar_table()
{
    return kTable;
}

} // namespace uwsec::mc::detail
