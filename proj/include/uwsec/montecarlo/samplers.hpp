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

#ifndef UWSEC_MONTECARLO_SAMPLERS_HPP
#define UWSEC_MONTECARLO_SAMPLERS_HPP

#include "uwsec/montecarlo/rng.hpp"
#include "uwsec/rf_channel.hpp"
#include "uwsec/uowc_channel.hpp"

#include <cstdint>
#include <utility>

namespace uwsec::mc {

// Marsaglia polar method; the second variate of each pair is discarded.
double sample_standard_normal(Rng& rng);

// Unit-scale gamma (Marsaglia-Tsang; shape < 1 through the U^(1/shape) boost).
double sample_gamma(double shape, Rng& rng);

// Inversion for mean < 50, PTRS transformed rejection otherwise.
std::uint64_t sample_poisson(double mean, Rng& rng);

// Inverse CDF of the random-waypoint distance law by bisection to 1e-12 D.
double sample_rwp_distance(const RfLinkParams& p, Rng& rng);

// Unit-mean kappa-mu power of one branch: Gamma(mu + K) / (mu (1 + kappa)), K ~ Poisson(mu kappa).
double sample_kappa_mu_power(const RfLinkParams& p, Rng& rng);

// varrho gbar q^-alpha times the sum of L branch powers sharing one distance q.
double sample_kappa_mu_snr(const RfLinkParams& p, Rng& rng);

// One hop coefficient: mEGG turbulence times pointing factor J U^(1/xi^2).
double sample_megg_coefficient(const MeggParams& h, Rng& rng);

// Cascade amplitude chi = sum over N elements of the two hop coefficients.
double sample_ris_cascade_amplitude(const UowcLinkParams& p, Rng& rng);

// gbar chi^r.
double sample_ris_cascade_snr(const UowcLinkParams& p, Rng& rng);

// gbar (w_scale G)^r with G ~ Gamma(rho): the gamma approximation of the cascade.
double sample_ris_gamma_approx_snr(const RisCascadeStats& s, double gbar, Rng& rng);

// Main and eavesdropper cascade SNRs sharing the first-hop coefficients.
// Requires equal N; `shared` drives the first hop, the others the second hops.
std::pair<double, double> sample_ris_cascade_pair(const UowcLinkParams& main, const UowcLinkParams& eve,
                                                  Rng& shared, Rng& main_rng, Rng& eve_rng);

} // namespace uwsec::mc

#endif
