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

#include "uwsec/rf_channel.hpp"

#include "uwsec/errors.hpp"
#include "uwsec/specfun/bessel.hpp"
#include "uwsec/specfun/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace uwsec {

namespace sf = specfun;

namespace {

// Poisson components below this log-weight are dropped.
constexpr double kLogWeightFloor = -42.0;

} // namespace

void RfLinkParams::validate() const
{
    std::ostringstream bad;
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        bad << "kappa must be >= 0; ";
    if (!(mu > 0.0) || !std::isfinite(mu))
        bad << "mu must be > 0; ";
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        bad << "alpha must be > 0; ";
    if (!(D > 0.0) || !std::isfinite(D))
        bad << "D must be > 0; ";
    if (L < 1)
        bad << "L must be >= 1; ";
    if (!(varrho > 0.0) || !std::isfinite(varrho))
        bad << "varrho must be > 0; ";
    if (!(gbar > 0.0) || !std::isfinite(gbar))
        bad << "gbar must be > 0; ";
    if (bessel_p < 1)
        bad << "bessel_p must be >= 1; ";
    if (!bad.str().empty())
        throw DomainError("RfLinkParams: " + bad.str());
}

double RfTerm::K1() const
{
    return sign_K1 * std::exp(log_abs_K1);
}

double rwp_distance_pdf(double q, const RfLinkParams& p)
{
    require_domain(q >= 0.0, "rwp_distance_pdf: distance must be >= 0");
    if (q > p.D)
        return 0.0;
    const double u = q / p.D;
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        s += RwpCoefficients::C[i] * std::pow(u, RwpCoefficients::beta[i]);
    return std::max(s, 0.0) / p.D;
}

double rwp_distance_cdf(double q, const RfLinkParams& p)
{
    require_domain(q >= 0.0, "rwp_distance_cdf: distance must be >= 0");
    if (q >= p.D)
        return 1.0;
    const double u = q / p.D;
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        s += RwpCoefficients::C[i] / (RwpCoefficients::beta[i] + 1) * std::pow(u, RwpCoefficients::beta[i] + 1);
    return std::clamp(s, 0.0, 1.0);
}

double kappa_mu_envelope_pdf(double x, const RfLinkParams& p)
{
    require_domain(x >= 0.0, "kappa_mu_envelope_pdf: x must be >= 0");
    const double mu = p.mu, k = p.kappa;
    if (x == 0.0) {
        if (2.0 * mu - 1.0 > 0.0)
            return 0.0;
        if (2.0 * mu - 1.0 < 0.0)
            return std::numeric_limits<double>::infinity();
    }
    if (k == 0.0) {
        // Nakagami-m, unit power.
        const double l = std::log(2.0) + mu * std::log(mu) + (2.0 * mu - 1.0) * std::log(x) - mu * x * x
            - sf::ln_gamma(mu);
        return std::exp(l);
    }
    const double B = mu * (1.0 + k);
    const double M = 2.0 * mu * std::sqrt(k * (1.0 + k));
    const double log_A = std::log(2.0 * mu) + 0.5 * (mu + 1.0) * std::log1p(k) - 0.5 * (mu - 1.0) * std::log(k) - mu * k;
    if (x == 0.0) {
        // mu = 1/2: x^mu I_{-1/2}(M x) -> sqrt(2 / (pi M)).
        return std::exp(log_A + 0.5 * std::log(2.0 / (M_PI * M)));
    }
    const double l = log_A + mu * std::log(x) - B * x * x + sf::log_bessel_i(mu - 1.0, M * x);
    return std::exp(l);
}

RfLinkParams mrc_map(const RfLinkParams& p)
{
    p.validate();
    RfLinkParams m = p;
    m.mu = p.L * p.mu;
    m.gbar = p.L * p.gbar;
    m.L = 1;
    return m;
}

RfDerivedCoeffs rf_derived_coeffs(const RfLinkParams& params)
{
    const RfLinkParams m = mrc_map(params);
    RfDerivedCoeffs c;
    const double mu = m.mu, k = m.kappa;
    c.B = mu * (1.0 + k);
    c.M = 2.0 * mu * std::sqrt(k * (1.0 + k));
    c.A = k > 0.0 ? std::exp(std::log(2.0 * mu) + 0.5 * (mu + 1.0) * std::log1p(k) - 0.5 * (mu - 1.0) * std::log(k) - mu * k)
                  : 0.0;
    c.K2 = c.B * std::pow(m.D, m.alpha) / (m.varrho * m.gbar);
    for (int i = 0; i < 3; ++i)
        c.Psi[i] = (RwpCoefficients::beta[i] + 1.0) / m.alpha;

    // Poisson(lambda) components of the kappa-mu power law, damped by the
    // Bessel truncation factor r_k(p).
    const double lambda = mu * k;
    auto log_poisson = [&](int kk) {
        if (lambda == 0.0)
            return kk == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
        return kk * std::log(lambda) - lambda - std::lgamma(kk + 1.0);
    };
    const long p = m.bessel_p;
    const int mode = static_cast<int>(std::min<double>(std::floor(lambda), static_cast<double>(p)));
    int k_lo = mode, k_hi = mode;
    while (k_lo > 0 && log_poisson(k_lo - 1) > kLogWeightFloor)
        --k_lo;
    while (k_hi < p && log_poisson(k_hi + 1) > kLogWeightFloor)
        ++k_hi;

    c.mass = 0.0;
    for (int kk = k_lo; kk <= k_hi; ++kk) {
        const double r = sf::bessel_truncation_factor(kk, p);
        if (r <= 0.0)
            break;
        const double lw = log_poisson(kk) + std::log(r);
        const double w = std::exp(lw);
        c.mass += w;
        const double b = mu + kk;
        for (int i = 0; i < 3; ++i) {
            RfTerm t;
            t.i = i;
            t.k = kk;
            t.Psi = c.Psi[i];
            t.b = b;
            t.weight = w;
            const double Ci = RwpCoefficients::C[i];
            t.sign_K1 = Ci < 0.0 ? -1 : 1;
            t.log_abs_K1 = std::log(std::abs(Ci) / m.alpha) + lw - sf::ln_gamma(b);
            c.terms.push_back(t);
        }
    }
    c.truncation_estimate = std::abs(1.0 - c.mass);
    return c;
}

RfSnrModel::RfSnrModel(const RfLinkParams& p)
    : params_(p), mapped_(mrc_map(p)), coeffs_(rf_derived_coeffs(p))
{
    for (const RfTerm& t : coeffs_.terms) {
        log_gamma_b_.push_back(sf::ln_gamma(t.b));
        log_gamma_ratio_.push_back(sf::ln_gamma(t.b + t.Psi) - sf::ln_gamma(t.b));
    }
}

sf::MeijerGSpec RfSnrModel::pdf_spec(const RfTerm& t)
{
    return {1, 1, {1.0 - t.Psi}, {t.b, -t.Psi}};
}

sf::MeijerGSpec RfSnrModel::cdf_spec(const RfTerm& t)
{
    return {1, 2, {1.0 - t.Psi, 1.0}, {t.b, 0.0, -t.Psi}};
}

double RfSnrModel::pdf(double gamma) const
{
    require_domain(gamma >= 0.0, "snr_pdf: gamma must be >= 0");
    if (gamma == 0.0)
        return 0.0;
    // K1 gamma^-1 G^{1,1}_{1,2}[x] with G = x^-Psi lower_gamma(b + Psi, x).
    const double x = coeffs_.K2 * gamma;
    const double lx = std::log(x);
    double s = 0.0;
    for (std::size_t j = 0; j < coeffs_.terms.size(); ++j) {
        const RfTerm& t = coeffs_.terms[j];
        const double l = t.log_abs_K1 + sf::ln_gamma_p(t.b + t.Psi, x) + log_gamma_b_[j] + log_gamma_ratio_[j]
            - t.Psi * lx - std::log(gamma);
        s += t.sign_K1 * std::exp(l);
    }
    return std::max(s, 0.0);
}

double RfSnrModel::cdf(double gamma, CdfRoute route) const
{
    require_domain(gamma >= 0.0, "snr_cdf: gamma must be >= 0");
    if (gamma == 0.0)
        return 0.0;
    const double x = coeffs_.K2 * gamma;
    double s = 0.0;
    if (route == CdfRoute::meijer) {
        for (const RfTerm& t : coeffs_.terms)
            s += t.K1() * sf::meijer_g(cdf_spec(t), x);
        return s;
    }
    const double lx = std::log(x);
    for (std::size_t j = 0; j < coeffs_.terms.size(); ++j) {
        const RfTerm& t = coeffs_.terms[j];
        const double w = RwpCoefficients::C[t.i] / (RwpCoefficients::beta[t.i] + 1.0) * t.weight;
        const double tail = std::exp(sf::ln_gamma_p(t.b + t.Psi, x) + log_gamma_ratio_[j] - t.Psi * lx);
        s += w * (sf::gamma_p(t.b, x) - tail);
    }
    return s;
}

double RfSnrModel::ccdf(double gamma) const
{
    require_domain(gamma >= 0.0, "snr_ccdf: gamma must be >= 0");
    if (gamma == 0.0)
        return 1.0;
    const double x = coeffs_.K2 * gamma;
    const double lx = std::log(x);
    double s = 1.0 - coeffs_.mass;
    for (std::size_t j = 0; j < coeffs_.terms.size(); ++j) {
        const RfTerm& t = coeffs_.terms[j];
        const double w = RwpCoefficients::C[t.i] / (RwpCoefficients::beta[t.i] + 1.0) * t.weight;
        const double tail = std::exp(sf::ln_gamma_p(t.b + t.Psi, x) + log_gamma_ratio_[j] - t.Psi * lx);
        s += w * (sf::gamma_q(t.b, x) + tail);
    }
    return s;
}

double RfSnrModel::cdf_asymptotic(double gamma) const
{
    require_domain(gamma >= 0.0, "snr_cdf_asymptotic: gamma must be >= 0");
    if (gamma == 0.0)
        return 0.0;
    const double lx = std::log(coeffs_.K2 * gamma);
    double s = 0.0;
    for (const RfTerm& t : coeffs_.terms) {
        const auto t1 = RfDerivedCoeffs::T1(t);
        const auto t2 = RfDerivedCoeffs::T2(t);
        double l = t.log_abs_K1 + t.b * lx;
        int sign = t.sign_K1;
        for (double v : t1) {
            const sf::SignedLog g = sf::ln_gamma_signed(v + t.b);
            l += g.log_abs;
            sign *= g.sign;
        }
        for (double v : t2) {
            const sf::SignedLog g = sf::ln_gamma_signed(v + t.b);
            l -= g.log_abs;
            sign *= g.sign;
        }
        s += sign * std::exp(l);
    }
    return s;
}

double snr_pdf(double gamma, const RfLinkParams& p)
{
    return RfSnrModel(p).pdf(gamma);
}

double snr_cdf(double gamma, const RfLinkParams& p, CdfRoute route)
{
    return RfSnrModel(p).cdf(gamma, route);
}

double snr_ccdf(double gamma, const RfLinkParams& p)
{
    return RfSnrModel(p).ccdf(gamma);
}

double snr_cdf_asymptotic(double gamma, const RfLinkParams& p)
{
    return RfSnrModel(p).cdf_asymptotic(gamma);
}

} // namespace uwsec
