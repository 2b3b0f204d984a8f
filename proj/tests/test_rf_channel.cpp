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

#include "doctest.h"

#include "uwsec/errors.hpp"
#include "uwsec/montecarlo/estimators.hpp"
#include "uwsec/rf_channel.hpp"
#include "uwsec/specfun/quadrature.hpp"

#include <cmath>
#include <numeric>

#ifdef UWSEC_HAVE_BOOST
#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/special_functions/bessel.hpp>
#endif

using namespace uwsec;
namespace sf = uwsec::specfun;
using doctest::Approx;

namespace {

RfLinkParams link(double kappa, double mu, int L, double gbar)
{
    RfLinkParams p;
    p.kappa = kappa;
    p.mu = mu;
    p.L = L;
    p.gbar = gbar;
    return p;
}

double integrate_pdf(const RfSnrModel& m, double upper)
{
    sf::QuadOptions o;
    o.rel_tol = 1e-11;
    o.max_intervals = 4000;
    o.initial_panels = 64;
    return sf::integrate_log_axis([&](double g) { return m.pdf(g); }, -40.0, std::log(upper), o).value;
}

#ifdef UWSEC_HAVE_BOOST
// Conditioned on the distance q, 2 mu (1 + kappa) times the summed branch
// power is noncentral chi-square with 2 L mu degrees of freedom and
// noncentrality 2 L mu kappa.
double boost_snr_cdf(double gamma, const RfLinkParams& p)
{
    const double dof = 2.0 * p.L * p.mu;
    const double nc = 2.0 * p.L * p.mu * p.kappa;
    const auto F = [&](double x) {
        if (p.kappa == 0.0) {
            boost::math::chi_squared_distribution<double> d(dof);
            return boost::math::cdf(d, x);
        }
        boost::math::non_central_chi_squared_distribution<double> d(dof, nc);
        return boost::math::cdf(d, x);
    };
    auto integrand = [&](double q) {
        const double x = 2.0 * p.mu * (1.0 + p.kappa) * gamma * std::pow(q, p.alpha) / (p.varrho * p.gbar);
        return rwp_distance_pdf(q, p) * F(x);
    };
    sf::QuadOptions o;
    o.rel_tol = 1e-12;
    o.initial_panels = 16;
    return sf::integrate(integrand, 0.0, p.D, o).value;
}
#endif

} // namespace

TEST_CASE("RWP distance polynomial normalizes exactly")
{
    // Sum_i C_i / (beta_i + 1) with C_i = n_i / 72, in integers.
    const long n[3] = {735, -1190, 455};
    long num = 0, den = 1;
    for (int i = 0; i < 3; ++i) {
        const long d = 72L * (RwpCoefficients::beta[i] + 1);
        num = num * d + n[i] * den;
        den *= d;
        const long g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    CHECK(num == 1);
    CHECK(den == 1);

    const RfLinkParams p = link(1, 2, 1, 10);
    CHECK(rwp_distance_pdf(0.0, p) == 0.0);
    CHECK(std::abs(rwp_distance_pdf(p.D, p)) < 1e-15);
    CHECK(rwp_distance_pdf(2.0 * p.D, p) == 0.0);
    CHECK(rwp_distance_cdf(p.D, p) == 1.0);
    CHECK(rwp_distance_cdf(0.0, p) == 0.0);
}

TEST_CASE("RWP CDF is the integral of the PDF")
{
    RfLinkParams p = link(1, 2, 1, 10);
    p.D = 80.0;
    for (double q : {5.0, 20.0, 41.0, 77.0}) {
        const double num = sf::integrate([&](double x) { return rwp_distance_pdf(x, p); }, 0.0, q).value;
        CHECK(rwp_distance_cdf(q, p) == Approx(num).epsilon(1e-12));
    }
    CHECK_THROWS_AS(rwp_distance_pdf(-1.0, p), DomainError);
}

TEST_CASE("kappa-mu envelope PDF has unit mass and unit power")
{
    for (double kappa : {0.0, 0.5, 1.0, 5.0})
        for (double mu : {0.75, 1.0, 2.0, 3.5}) {
            const RfLinkParams p = link(kappa, mu, 1, 10);
            auto f = [&](double x) { return kappa_mu_envelope_pdf(x, p); };
            const double mass = sf::integrate(f, 0.0, 8.0, {0.0, 1e-12, 2000, 16}).value;
            const double power = sf::integrate([&](double x) { return x * x * f(x); }, 0.0, 8.0, {0.0, 1e-12, 2000, 16}).value;
            CHECK(mass == Approx(1.0).epsilon(1e-9));
            CHECK(power == Approx(1.0).epsilon(1e-9));
        }
}

#ifdef UWSEC_HAVE_BOOST
TEST_CASE("kappa-mu envelope PDF matches the Bessel form")
{
    for (double kappa : {0.3, 1.0, 4.0})
        for (double mu : {1.0, 2.0, 2.5}) {
            const RfLinkParams p = link(kappa, mu, 1, 10);
            for (double x : {0.1, 0.7, 1.0, 1.9}) {
                const double ref = 2.0 * mu * std::pow(1.0 + kappa, 0.5 * (mu + 1.0))
                    / (std::pow(kappa, 0.5 * (mu - 1.0)) * std::exp(mu * kappa)) * std::pow(x, mu)
                    * std::exp(-mu * (1.0 + kappa) * x * x)
                    * boost::math::cyl_bessel_i(mu - 1.0, 2.0 * mu * std::sqrt(kappa * (1.0 + kappa)) * x);
                CHECK(kappa_mu_envelope_pdf(x, p) == Approx(ref).epsilon(1e-11));
            }
        }
}

TEST_CASE("SNR CDF matches a noncentral chi-square mixture over the distance")
{
    for (int L : {1, 2})
        for (double kappa : {0.0, 1.0, 3.0}) {
            const RfLinkParams p = link(kappa, 2.0, L, 1e4);
            for (double g : {0.5, 3.0, 20.0, 200.0})
                CHECK(snr_cdf(g, p) == Approx(boost_snr_cdf(g, p)).epsilon(2e-6).scale(1.0));
        }
    // Non-integer mu and a different path-loss exponent.
    RfLinkParams p = link(0.7, 1.3, 1, 3e3);
    p.alpha = 2.5;
    p.D = 30.0;
    for (double g : {0.2, 2.0, 9.0})
        CHECK(snr_cdf(g, p) == Approx(boost_snr_cdf(g, p)).epsilon(2e-6).scale(1.0));
}
#endif

TEST_CASE("SNR PDF integrates to the retained series mass and to the CDF")
{
    for (int L : {1, 2})
        for (double kappa : {0.0, 1.0, 3.0}) {
            const RfSnrModel m(link(kappa, 2.0, L, 10.0));
            CHECK(integrate_pdf(m, 1e13) == Approx(m.coeffs().mass).epsilon(1e-8));
            CHECK(m.coeffs().truncation_estimate < 1e-6);
            for (double g : {0.01, 0.3, 3.0})
                CHECK(m.cdf(g) == Approx(integrate_pdf(m, g)).epsilon(1e-8));
        }
}

TEST_CASE("CDF routes agree and complement the CCDF")
{
    for (int L : {1, 2})
        for (double kappa : {0.0, 1.0}) {
            const RfSnrModel m(link(kappa, 2.0, L, 10.0));
            double prev = 0.0;
            for (double g = 1e-3; g < 1e4; g *= 3.7) {
                const double c = m.cdf(g);
                CHECK(c == Approx(m.cdf(g, CdfRoute::meijer)).epsilon(1e-8).scale(1e-10));
                CHECK(c + m.ccdf(g) == Approx(1.0).epsilon(1e-12));
                CHECK(c >= prev);
                prev = c;
            }
        }
}

TEST_CASE("MRC mapping scales mu and the mean SNR by L")
{
    RfLinkParams p = link(1.0, 1.5, 3, 7.0);
    const RfLinkParams m = mrc_map(p);
    CHECK(m.mu == 4.5);
    CHECK(m.gbar == 21.0);
    CHECK(m.L == 1);
    CHECK(m.kappa == p.kappa);
}

TEST_CASE("low-SNR asymptote is the leading CDF behaviour")
{
    const RfSnrModel m(link(1.0, 2.0, 1, 10.0));
    const double r1 = m.cdf_asymptotic(1e-5) / m.cdf(1e-5);
    const double r2 = m.cdf_asymptotic(1e-7) / m.cdf(1e-7);
    CHECK(std::abs(r2 - 1.0) < std::abs(r1 - 1.0));
    CHECK(r2 == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("short Bessel truncation loses probability mass")
{
    // The truncated series loses mass roughly like E[k^3] / (3 p^2) for the
    // Poisson(L mu kappa) index k, so it shrinks ~4x per doubling of p.
    RfLinkParams p = link(1.0, 2.0, 1, 10.0);
    double prev = 1.0;
    for (long bp : {20L, 40L, 80L}) {
        p.bessel_p = bp;
        const double deficit = rf_derived_coeffs(p).truncation_estimate;
        CHECK(deficit > 0.0);
        CHECK(deficit < prev / 3.0);
        prev = deficit;
    }
    p.bessel_p = 20;
    CHECK(rf_derived_coeffs(p).truncation_estimate == Approx(0.0114).epsilon(0.02));
    p.L = 2;
    CHECK(rf_derived_coeffs(p).truncation_estimate == Approx(0.0666).epsilon(0.02));
}

TEST_CASE("Monte Carlo SNR samples follow the closed-form CDF")
{
    const RfLinkParams p = link(1.0, 2.0, 2, 1e4);
    const auto s = mc::sample_rf_snr(p, 200000, mc::RngSeed{11, 0}, 1);
    const double gap = mc::sup_cdf_gap(s, [&](double g) { return snr_cdf(g, p); });
    CHECK(gap < mc::dkw_radius(200000));
}

TEST_CASE("invalid parameters are rejected")
{
    RfLinkParams p = link(1.0, 2.0, 1, 10.0);
    p.mu = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = link(1.0, 2.0, 0, 10.0);
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = link(-0.5, 2.0, 1, 10.0);
    CHECK_THROWS_AS(p.validate(), DomainError);
}
