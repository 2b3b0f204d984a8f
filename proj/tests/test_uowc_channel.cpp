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
#include "uwsec/specfun/quadrature.hpp"
#include "uwsec/uowc_channel.hpp"

#include <cmath>

#ifdef UWSEC_HAVE_BOOST
#include <boost/math/special_functions/gamma.hpp>
#endif

using namespace uwsec;
namespace sf = uwsec::specfun;
using doctest::Approx;

namespace {

// mEGG irradiance density: exponential / generalized-gamma mixture.
double megg_pdf(double I, const MeggParams& h)
{
    const double e = h.w / h.lambda * std::exp(-I / h.lambda);
    const double g = (1.0 - h.w) * h.c * std::pow(I, h.a * h.c - 1.0)
        / (std::pow(h.b, h.a * h.c) * std::tgamma(h.a)) * std::exp(-std::pow(I / h.b, h.c));
    return e + g;
}

// E[(I h_p)^p] with the pointing loss h_p = J U^{1/xi^2}, U uniform.
double hop_moment_by_quadrature(double p, const MeggParams& h)
{
    sf::QuadOptions o;
    o.rel_tol = 1e-12;
    o.max_intervals = 4000;
    o.initial_panels = 64;
    const double turb = sf::integrate([&](double I) { return std::pow(I, p) * megg_pdf(I, h); }, 0.0, 60.0, o).value;
    const double point = sf::integrate([&](double u) { return std::pow(h.J * std::pow(u, 1.0 / (h.xi * h.xi)), p); },
                                       0.0, 1.0, o)
                             .value;
    return turb * point;
}

UowcLinkParams optical(int N, Detection r, double gbar)
{
    UowcLinkParams u;
    u.N = N;
    u.r = r;
    u.gbar = gbar;
    return u;
}

MeggParams strong_hop()
{
    MeggParams h;
    h.w = 0.4589;
    h.lambda = 0.3449;
    h.a = 1.0421;
    h.b = 1.5768;
    h.c = 35.9424;
    h.xi = 1.5;
    h.J = 0.8;
    return h;
}

} // namespace

TEST_CASE("single-hop moments match direct integration")
{
    for (const MeggParams& h : {MeggParams{}, strong_hop()})
        for (double p : {0.5, 1.0, 2.0, 3.0})
            CHECK(megg_hop_moment(p, h) == Approx(hop_moment_by_quadrature(p, h)).epsilon(1e-8));
    CHECK(megg_hop_moment(0.0, MeggParams{}) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cascade moments factor over independent hops")
{
    const MeggParams h1{}, h2 = strong_hop();
    for (double p : {0.0, 1.0, 2.0}) {
        const AlephTerms t = megg_product_moment_terms(p, h1, h2);
        CHECK(t.sum() == Approx(megg_hop_moment(p, h1) * megg_hop_moment(p, h2)).epsilon(1e-13));
        CHECK(megg_product_moment(p, h1, h2) == Approx(t.sum()).epsilon(1e-15));
    }
    CHECK(megg_product_moment(0.0, h1, h2) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gamma approximation matches the first two moments of the RIS sum")
{
    UowcLinkParams u = optical(4, Detection::HD, 10.0);
    u.hop2 = strong_hop();
    const RisCascadeStats s = gamma_approx(u);
    const double m1 = megg_product_moment(1.0, u.hop1, u.hop2);
    const double m2 = megg_product_moment(2.0, u.hop1, u.hop2);
    // Gamma(rho, w): mean rho w = N m1, variance rho w^2 = N (m2 - m1^2).
    CHECK(s.rho * s.w_scale == Approx(4.0 * m1).epsilon(1e-13));
    CHECK(s.rho * s.w_scale * s.w_scale == Approx(4.0 * (m2 - m1 * m1)).epsilon(1e-13));
}

#ifdef UWSEC_HAVE_BOOST
TEST_CASE("SNR CDF is the regularized gamma law of the RIS sum")
{
    for (Detection r : {Detection::HD, Detection::IMDD})
        for (int N : {1, 2, 8}) {
            const UowcLinkParams u = optical(N, r, 10.0);
            const double m1 = megg_product_moment(1.0, u.hop1, u.hop2);
            const double var = megg_product_moment(2.0, u.hop1, u.hop2) - m1 * m1;
            const double shape = N * m1 * m1 / var, scale = var / m1;
            for (double g : {0.01, 0.5, 4.0, 30.0}) {
                const double chi = r == Detection::HD ? g / u.gbar : std::sqrt(g / u.gbar);
                const double ref = boost::math::gamma_p(shape, chi / scale);
                CHECK(ris_snr_cdf(g, u) == Approx(ref).epsilon(1e-12).scale(1e-300));
                CHECK(ris_snr_cdf(g, u, CdfRoute::meijer) == Approx(ref).epsilon(1e-8).scale(1e-14));
            }
        }
}
#endif

TEST_CASE("SNR PDF integrates to the CDF and to one")
{
    for (Detection r : {Detection::HD, Detection::IMDD})
        for (int N : {1, 3}) {
            const RisSnrModel m(optical(N, r, 10.0));
            sf::QuadOptions o;
            o.rel_tol = 1e-11;
            o.max_intervals = 4000;
            o.initial_panels = 64;
            auto f = [&](double g) { return m.pdf(g); };
            CHECK(sf::integrate_log_axis(f, -60.0, 12.0, o).value == Approx(1.0).epsilon(1e-9));
            for (double g : {0.1, 2.0, 25.0})
                CHECK(sf::integrate_log_axis(f, -60.0, std::log(g), o).value == Approx(m.cdf(g)).epsilon(1e-9));
            CHECK(m.cdf(2.0) + m.ccdf(2.0) == Approx(1.0).epsilon(1e-14));
        }
}

TEST_CASE("high-SNR asymptote approaches the CDF at small arguments")
{
    const RisSnrModel m(optical(2, Detection::IMDD, 100.0));
    const double r1 = m.cdf_asymptotic(1e-2) / m.cdf(1e-2);
    const double r2 = m.cdf_asymptotic(1e-5) / m.cdf(1e-5);
    CHECK(std::abs(r2 - 1.0) < std::abs(r1 - 1.0));
    CHECK(r2 == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Monte Carlo cascade moments agree with the closed form")
{
    const MeggParams h1{}, h2 = strong_hop();
    const auto x = mc::sample_megg_product(h1, h2, 400000, mc::RngSeed{3, 0}, 1);
    for (double p : {1.0, 2.0}) {
        std::vector<double> xp(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            xp[i] = std::pow(x[i], p);
        const mc::McEstimate e = mc::mean_estimate(xp);
        CHECK(std::abs(e.value - megg_product_moment(p, h1, h2)) < e.half_width_3sigma);
    }
}

TEST_CASE("gamma-approximation error shrinks as the RIS grows")
{
    // The physical cascade is a sum of N products; the moment-matched gamma
    // law gets closer as N grows.
    double prev = 1.0;
    for (int N : {1, 2, 8}) {
        const UowcLinkParams u = optical(N, Detection::HD, 10.0);
        const auto s = mc::sample_uowc_snr(u, 200000, mc::RngSeed{5, 0}, 1);
        const double gap = mc::sup_cdf_gap(s, [&](double g) { return ris_snr_cdf(g, u); });
        CHECK(gap < prev - 2.0 * mc::dkw_radius(200000));
        prev = gap;
    }
}

TEST_CASE("turbulence registry parsing")
{
    const auto reg = parse_turbulence_registry(
        "# comment\n"
        "one = 0.2, 0.3, 1.4, 1.1, 17   # trailing\n"
        "two = 0.2, 0.3, 1.4, 1.1, 17 ; 0.4, 0.3, 1.0, 1.5, 30\n");
    REQUIRE(reg.size() == 2);
    CHECK(reg.at("one").hop1.w == 0.2);
    CHECK(reg.at("one").hop2.c == 17.0);
    CHECK(reg.at("two").hop2.w == 0.4);
    CHECK(reg.at("two").hop1.xi == 1.0);
    CHECK_THROWS_AS(parse_turbulence_registry("a = 1, 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_turbulence_registry("a = 0.2, 0.3, 1.4, 1.1, 17\na = 0.2, 0.3, 1.4, 1.1, 17\n"), ConfigError);
    CHECK_THROWS_AS(parse_turbulence_registry("no equals sign\n"), ConfigError);

    const auto shipped = load_turbulence_registry(std::string(UWSEC_SOURCE_DIR) + "/data/turbulence_registry.txt");
    CHECK(shipped.count("fresh_uniform_bl2p4") == 1);
    for (const auto& [name, e] : shipped) {
        CHECK_NOTHROW(e.hop1.validate());
        CHECK_NOTHROW(e.hop2.validate());
    }
}

TEST_CASE("invalid optical parameters are rejected")
{
    UowcLinkParams u = optical(0, Detection::HD, 10.0);
    CHECK_THROWS_AS(u.validate(), DomainError);
    u = optical(2, Detection::HD, -1.0);
    CHECK_THROWS_AS(u.validate(), DomainError);
    MeggParams h;
    h.w = 1.5;
    CHECK_THROWS_AS(h.validate(), DomainError);
    CHECK_THROWS_AS(megg_hop_moment(-1.0, MeggParams{}), DomainError);
}
