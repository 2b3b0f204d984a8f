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

#include "uwsec/montecarlo/rng.hpp"

namespace uwsec::mc {

Rng::Rng(RngSeed seed, std::uint32_t chunk, const Kernels& k)
    : k_(&k), key_(philox_key(seed.seed)), stream_(seed.stream_id), chunk_(chunk)
{
}

void Rng::refill()
{
    k_->philox_fill(key_, stream_, chunk_, next_block_, kBlocks, raw_.data());
    k_->u32_to_unit(raw_.data(), kDoubles, buf_.data());
    next_block_ += kBlocks;
    pos_ = 0;
}

} // namespace uwsec::mc
