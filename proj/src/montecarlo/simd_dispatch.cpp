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

#include "simd_internal.hpp"

#include "uwsec/errors.hpp"

#include <cstdlib>
#include <string>

namespace uwsec::mc {

const char* simd_name(SimdLevel level)
{
    return level == SimdLevel::avx2 ? "avx2" : "scalar";
}

const Kernels& scalar_kernels()
{
    return detail::scalar_table();
}

const Kernels* avx2_kernels()
{
#if defined(__x86_64__) || defined(_M_X64)
    static const bool cpu = __builtin_cpu_supports("avx2");
    return cpu ? detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const Kernels& kernels()
{
    static const Kernels* active = [] {
        const char* env = std::getenv("UWSEC_SIMD");
        const std::string want = env ? env : "";
        if (want == "scalar")
            return &scalar_kernels();
        if (!want.empty() && want != "avx2" && want != "auto")
            throw ConfigError("UWSEC_SIMD must be scalar, avx2 or auto, got '" + want + "'");
        const Kernels* v = avx2_kernels();
        return v ? v : &scalar_kernels();
    }();
    return *active;
}

} // namespace uwsec::mc
