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

#ifndef UWSEC_SRC_MONTECARLO_SIMD_INTERNAL_HPP
#define UWSEC_SRC_MONTECARLO_SIMD_INTERNAL_HPP

#include "uwsec/montecarlo/simd.hpp"

namespace uwsec::mc::detail {

const Kernels& scalar_table();
// Null when the translation unit was built without AVX2 support.
const Kernels* avx2_table();

} // namespace uwsec::mc::detail

#endif
