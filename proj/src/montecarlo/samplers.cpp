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

#include "uwsec/montecarlo/samplers.hpp"

#include "uwsec/errors.hpp"
#include "uwsec/specfun/gamma.hpp"

#include <cmath>

namespace uwsec::mc {

double sample_standard_normal(Rng& rng)
{
    for (;;) {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        const double s = u * u + v * v;
        if (s < 1.0 && s > 0.0)
            return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double sample_gamma(double shape, Rng& rng)
{
    require_domain(shape > 0.0, "sample_gamma: shape must be > 0");
    if (shape < 1.0) {
        const double g = sample_gamma(shape + 1.0, rng);
        return g * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = sample_standard_normal(rng);
        double v = 1.0 + c * x;
        if (v <= 0.0)
            continue;
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2)
            return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

std::uint64_t sample_poisson(double mean, Rng& rng)
{
    require_domain(mean >= 0.0 && std::isfinite(mean), "sample_poisson: mean must be finite and >= 0");
    if (mean == 0.0)
        return 0;
    if (mean < 50.0) {
        double p = std::exp(-mean), s = p;
        const double u = rng.uniform();
        std::uint64_t k = 0;
        while (u > s && k < 10000) {
            ++k;
            p *= mean / static_cast<double>(k);
            s += p;
        }
        return k;
    }
    // Transformed rejection with squeeze (Hormann's PTRS).
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double U = rng.uniform() - 0.5;
        const double V = rng.uniform();
        const double us = 0.5 - std::abs(U);
        const double k = std::floor((2.0 * a / us + b) * U + mean + 0.43);
        if (us >= 0.07 && V <= vr)
            return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && V > us))
            continue;
        if (std::log(V) + std::log(inv_alpha) - std::log(a / (us * us) + b)
            <= -mean + k * loglam - specfun::ln_gamma(k + 1.0))
            return static_cast<std::uint64_t>(k);
    }
}

double sample_rwp_distance(const RfLinkParams& p, Rng& rng)
{
    // CDF in t = q / D: sum_i C_i t^(beta_i + 1) / (beta_i + 1).
    constexpr auto& C = RwpCoefficients::C;
    constexpr auto& beta = RwpCoefficients::beta;
    static_assert(beta[0] == 2 && beta[1] > beta[0] && beta[2] > beta[1] && beta[1] % 2 == 0 && beta[2] % 2 == 0,
                  "odd-power recurrence below assumes even, increasing exponents starting at 2");
    auto cdf = [&](double t) {
        const double t2 = t * t;
        double f = 0.0, tp = t * t2;
        int power = 3;
        for (std::size_t i = 0; i < C.size(); ++i) {
            for (; power < beta[i] + 1; power += 2)
                tp *= t2;
            f += C[i] / (beta[i] + 1.0) * tp;
        }
        return f;
    };
    const double u = rng.uniform();
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi) * p.D;
}

double sample_kappa_mu_power(const RfLinkParams& p, Rng& rng)
{
    const std::uint64_t k = sample_poisson(p.mu * p.kappa, rng);
    return sample_gamma(p.mu + static_cast<double>(k), rng) / (p.mu * (1.0 + p.kappa));
}

double sample_kappa_mu_snr(const RfLinkParams& p, Rng& rng)
{
    const double q = sample_rwp_distance(p, rng);
    double power = 0.0;
    for (int l = 0; l < p.L; ++l)
        power += sample_kappa_mu_power(p, rng);
    return p.varrho * p.gbar * std::pow(q, -p.alpha) * power;
}

double sample_megg_coefficient(const MeggParams& h, Rng& rng)
{
    double turb;
    if (rng.uniform() < h.w)
        turb = -h.lambda * std::log(rng.uniform());
    else
        turb = h.b * std::pow(sample_gamma(h.a, rng), 1.0 / h.c);
    const double pointing = h.J * std::pow(rng.uniform(), 1.0 / (h.xi * h.xi));
    return turb * pointing;
}

double sample_ris_cascade_amplitude(const UowcLinkParams& p, Rng& rng)
{
    double chi = 0.0;
    for (int n = 0; n < p.N; ++n) {
        const double a = sample_megg_coefficient(p.hop1, rng);
        chi += a * sample_megg_coefficient(p.hop2, rng);
    }
    return chi;
}

double sample_ris_cascade_snr(const UowcLinkParams& p, Rng& rng)
{
    const double chi = sample_ris_cascade_amplitude(p, rng);
    return p.gbar * (p.r == Detection::IMDD ? chi * chi : chi);
}

double sample_ris_gamma_approx_snr(const RisCascadeStats& s, double gbar, Rng& rng)
{
    const double chi = s.w_scale * sample_gamma(s.rho, rng);
    return gbar * (s.r == 2 ? chi * chi : chi);
}

std::pair<double, double> sample_ris_cascade_pair(const UowcLinkParams& main, const UowcLinkParams& eve,
                                                  Rng& shared, Rng& main_rng, Rng& eve_rng)
{
    require_domain(main.N == eve.N, "sample_ris_cascade_pair: both cascades need the same N");
    double cm = 0.0, ce = 0.0;
    for (int n = 0; n < main.N; ++n) {
        const double a = sample_megg_coefficient(main.hop1, shared);
        cm += a * sample_megg_coefficient(main.hop2, main_rng);
        ce += a * sample_megg_coefficient(eve.hop2, eve_rng);
    }
    auto snr = [](const UowcLinkParams& p, double chi) {
        return p.gbar * (p.r == Detection::IMDD ? chi * chi : chi);
    };
    return {snr(main, cm), snr(eve, ce)};
}

} // namespace uwsec::mc
