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

#ifndef UWSEC_RF_CHANNEL_HPP
#define UWSEC_RF_CHANNEL_HPP

#include "uwsec/specfun/meijer_g.hpp"

#include <array>
#include <vector>

namespace uwsec {

// One UAV RF link: kappa-mu fading, random-waypoint distance inside a
// sphere of radius D, path loss q^-alpha and L-branch MRC.
struct RfLinkParams {
    double kappa = 1.0;
    double mu = 2.0;
    double alpha = 2.0;
    double D = 50.0;
    int L = 1;
    double varrho = 1.0;
    double gbar = 10.0;
    long bessel_p = 100000;

    void validate() const;
};

// 3-D random-waypoint distance law f(q) = sum_i C_i q^beta_i / D^(beta_i+1).
struct RwpCoefficients {
    static constexpr std::array<double, 3> C{735.0 / 72.0, -1190.0 / 72.0, 455.0 / 72.0};
    static constexpr std::array<int, 3> beta{2, 4, 6};
};

// How snr_cdf evaluates each G^{1,2}_{2,3} term.
enum class CdfRoute {
    reduced, // incomplete-gamma reduction (default)
    meijer,  // generic Meijer G evaluator
};

// One (i, k) term of the mixture: i indexes the distance polynomial and k
// the Poisson component of the truncated Bessel series.
struct RfTerm {
    int i = 0;
    int k = 0;
    double Psi = 0.0;    // (beta_i + 1) / alpha
    double b = 0.0;      // mapped mu + k
    double weight = 0.0; // r_k(p) * Poisson(k; mapped mu * kappa), the Bessel-series weight
    double log_abs_K1 = 0.0;
    int sign_K1 = 1;
    double K1() const;
};

struct RfDerivedCoeffs {
    // kappa-mu constants of the combined (mapped) link.
    double A = 0.0, B = 0.0, M = 0.0;
    double K2 = 0.0;
    std::array<double, 3> Psi{};
    std::vector<RfTerm> terms;
    // Total retained Bessel-series weight; 1 for an untruncated series.
    double mass = 0.0;
    // |1 - mass|: probability mass lost to truncation at bessel_p.
    double truncation_estimate = 0.0;

    static std::array<double, 2> T1(const RfTerm& t) { return {t.Psi, 0.0}; }
    static std::array<double, 2> T2(const RfTerm& t) { return {1.0, 1.0 + t.Psi}; }
};

double rwp_distance_pdf(double q, const RfLinkParams& p);
double rwp_distance_cdf(double q, const RfLinkParams& p);

// Unit-power kappa-mu envelope density; kappa = 0 is Nakagami-m with m = mu.
double kappa_mu_envelope_pdf(double x, const RfLinkParams& p);

// Absorbs L-branch MRC into the fading parameters: mu <- L mu, gbar <- L gbar, L <- 1.
RfLinkParams mrc_map(const RfLinkParams& p);

RfDerivedCoeffs rf_derived_coeffs(const RfLinkParams& p);

// Precomputed SNR statistics for one link. Immutable after construction.
class RfSnrModel {
public:
    explicit RfSnrModel(const RfLinkParams& p);

    const RfLinkParams& params() const { return params_; }
    const RfLinkParams& mapped() const { return mapped_; }
    const RfDerivedCoeffs& coeffs() const { return coeffs_; }

    double pdf(double gamma) const;
    double cdf(double gamma, CdfRoute route = CdfRoute::reduced) const;
    // Includes the truncation deficit so that cdf + ccdf = 1 exactly in exact arithmetic.
    double ccdf(double gamma) const;
    double cdf_asymptotic(double gamma) const;

    // Meijer G panels of the closed forms, argument K2 * gamma.
    static specfun::MeijerGSpec pdf_spec(const RfTerm& t);
    static specfun::MeijerGSpec cdf_spec(const RfTerm& t);

private:
    RfLinkParams params_;
    RfLinkParams mapped_;
    RfDerivedCoeffs coeffs_;
    std::vector<double> log_gamma_b_;
    std::vector<double> log_gamma_ratio_; // ln Gamma(b + Psi) - ln Gamma(b)
};

double snr_pdf(double gamma, const RfLinkParams& p);
double snr_cdf(double gamma, const RfLinkParams& p, CdfRoute route = CdfRoute::reduced);
double snr_ccdf(double gamma, const RfLinkParams& p);
double snr_cdf_asymptotic(double gamma, const RfLinkParams& p);

} // namespace uwsec

#endif
