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

#ifndef UWSEC_MONTECARLO_ESTIMATORS_HPP
#define UWSEC_MONTECARLO_ESTIMATORS_HPP

#include "uwsec/montecarlo/rng.hpp"
#include "uwsec/secrecy.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace uwsec::mc {

struct McEstimate {
    double value = 0.0;
    double half_width_3sigma = 0.0;
    std::int64_t n_samples = 0;
};

// How optical cascade SNRs are drawn.
enum class UowcSampling {
    physical,     // per-element mEGG and pointing-error draws
    gamma_approx, // the moment-matched gamma law the closed forms assume
};

struct McOptions {
    RngSeed seed;
    UowcSampling uowc = UowcSampling::physical;
    // Worker threads; 0 picks the hardware concurrency.
    int threads = 0;
    // Let the optical main and eavesdropper cascades share their first-hop
    // coefficients instead of sampling them independently.
    bool shared_first_hop = false;
};

// Samples per chunk; every chunk owns its own counter substream.
inline constexpr std::int64_t kChunkSize = 65536;

// Stream ids of the per-link substreams (offset by 8 * seed.stream_id).
enum LinkStream : std::uint32_t {
    kStreamRfMain = 1,
    kStreamRfEve = 2,
    kStreamUowcMain = 3,
    kStreamUowcEve = 4,
    kStreamUowcShared = 5,
    kStreamAux = 6,
};

struct SopEstimate {
    McEstimate lower; // event of the lower-bound closed forms
    McEstimate exact; // secrecy-capacity definition, C_M - C_E < Rs
};

SopEstimate estimate_sop(const ScenarioConfig& cfg, std::int64_t n, const McOptions& opts = {});

// E[(ln(1 + gamma_eq) - ln(1 + gamma_E))^+] in nats, gamma_eq = min(gamma_R, gamma_D).
McEstimate estimate_asc(const ScenarioConfig& cfg, std::int64_t n, const McOptions& opts = {});

// n draws of a sampler, generated chunk by chunk on the given stream.
std::vector<double> sample_batch(const std::function<double(Rng&)>& draw, std::int64_t n, RngSeed seed,
                                 int threads = 0);

std::vector<double> sample_rf_snr(const RfLinkParams& p, std::int64_t n, RngSeed seed, int threads = 0);
std::vector<double> sample_uowc_snr(const UowcLinkParams& p, std::int64_t n, RngSeed seed, int threads = 0);
std::vector<double> sample_rwp(const RfLinkParams& p, std::int64_t n, RngSeed seed, int threads = 0);
// Single-element product of the two hop coefficients.
std::vector<double> sample_megg_product(const MeggParams& hop1, const MeggParams& hop2, std::int64_t n,
                                        RngSeed seed, int threads = 0);

// Mean with 3 sigma / sqrt(n) half-width.
McEstimate mean_estimate(const std::vector<double>& x);
// Proportion with binomial 3 sigma half-width.
McEstimate proportion_estimate(std::uint64_t hits, std::int64_t n);

// sup_x |F_n(x) - F(x)| of the empirical CDF of the samples.
double sup_cdf_gap(std::vector<double> samples, const std::function<double(double)>& cdf);

// Dvoretzky-Kiefer-Wolfowitz radius: P(sup gap > eps) <= 1 - confidence.
double dkw_radius(std::int64_t n, double confidence = 0.999);

} // namespace uwsec::mc

#endif
