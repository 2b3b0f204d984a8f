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

#ifndef UWSEC_UOWC_CHANNEL_HPP
#define UWSEC_UOWC_CHANNEL_HPP

#include "uwsec/rf_channel.hpp"

#include <map>
#include <string>

namespace uwsec {

// mEGG turbulence (exponential / generalized-gamma mixture) with a
// pointing-error factor J U^(1/xi^2).
struct MeggParams {
    double w = 0.2130;
    double lambda = 0.3291;
    double a = 1.4299;
    double b = 1.1817;
    double c = 17.1984;
    double xi = 1.0;
    double J = 1.0;

    void validate() const;
};

enum class Detection { HD = 1, IMDD = 2 };

// RIS-aided optical link: N elements, each the product of an R->I and an
// I->D (or I->eavesdropper) coefficient.
struct UowcLinkParams {
    MeggParams hop1;
    MeggParams hop2;
    int N = 2;
    Detection r = Detection::HD;
    double gbar = 10.0;

    void validate() const;
    int r_int() const { return static_cast<int>(r); }
};

// Gamma (first Laguerre term) approximation of the cascade sum and the
// derived SNR constants.
struct RisCascadeStats {
    double m1 = 0.0, m2 = 0.0;
    double rho = 0.0;
    double w_scale = 0.0;
    int r = 1;
    int N = 1;
    double tau = 0.0;
    double log_Upsilon1 = 0.0;
    double Upsilon2 = 0.0;
    double log_Upsilon3 = 0.0;
    double Upsilon4 = 0.0;
    double Upsilon5 = 0.0;
    std::array<double, 3> T3{};

    // Lower parameters (0, [1/2], -rho/r) of the CDF panel.
    std::vector<double> cdf_lower() const;
    specfun::MeijerGSpec cdf_spec() const;
};

// Per-hop moment E[(h_t h_p)^p].
double megg_hop_moment(double p, const MeggParams& h);

struct AlephTerms {
    double aleph1 = 0.0, aleph2 = 0.0, aleph3 = 0.0, aleph4 = 0.0;
    double sum() const { return aleph1 + aleph2 + aleph3 + aleph4; }
};

// The four mixture-component products of E[(alpha beta)^p].
AlephTerms megg_product_moment_terms(double p, const MeggParams& hop1, const MeggParams& hop2);
double megg_product_moment(double p, const MeggParams& hop1, const MeggParams& hop2);

RisCascadeStats gamma_approx(const UowcLinkParams& params);

class RisSnrModel {
public:
    explicit RisSnrModel(const UowcLinkParams& p);

    const UowcLinkParams& params() const { return params_; }
    const RisCascadeStats& stats() const { return stats_; }

    double pdf(double gamma) const;
    double cdf(double gamma, CdfRoute route = CdfRoute::reduced) const;
    double ccdf(double gamma) const;
    double cdf_asymptotic(double gamma) const;

private:
    UowcLinkParams params_;
    RisCascadeStats stats_;
};

double ris_snr_pdf(double gamma, const UowcLinkParams& p);
double ris_snr_cdf(double gamma, const UowcLinkParams& p, CdfRoute route = CdfRoute::reduced);
double ris_snr_ccdf(double gamma, const UowcLinkParams& p);
double ris_snr_cdf_asymptotic(double gamma, const UowcLinkParams& p);

// Named turbulence conditions. File format, one entry per line:
//   name = w, lambda, a, b, c                       (both hops)
//   name = w, lambda, a, b, c ; w, lambda, a, b, c  (hop1 ; hop2)
// '#' starts a comment. Pointing-error fields keep their defaults.
struct TurbulenceEntry {
    MeggParams hop1;
    MeggParams hop2;
};
using TurbulenceRegistry = std::map<std::string, TurbulenceEntry>;

TurbulenceRegistry parse_turbulence_registry(const std::string& text);
TurbulenceRegistry load_turbulence_registry(const std::string& path);

} // namespace uwsec

#endif
