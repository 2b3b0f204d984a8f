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
#include "uwsec/montecarlo/samplers.hpp"

#include <cmath>
#include <vector>

using namespace uwsec;
using namespace uwsec::mc;

namespace {

struct Moments {
    double mean = 0.0, var = 0.0;
};

template <class F>
Moments moments(int n, F&& draw)
{
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = draw();
        s += x;
        s2 += x * x;
    }
    const double m = s / n;
    return {m, s2 / n - m * m};
}

} // namespace

TEST_CASE("standard normal moments")
{
    Rng r({11, 0});
    const int n = 400000;
    const Moments m = moments(n, [&] { return sample_standard_normal(r); });
    CHECK(std::abs(m.mean) < 3.0 / std::sqrt(n));
    CHECK(std::abs(m.var - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("gamma moments across shapes")
{
    const int n = 400000;
    for (double shape : {0.3, 1.0, 2.5, 40.0}) {
        Rng r({12, 0});
        const Moments m = moments(n, [&] { return sample_gamma(shape, r); });
        CAPTURE(shape);
        CHECK(std::abs(m.mean - shape) < 4.0 * std::sqrt(shape / n));
        CHECK(std::abs(m.var - shape) / shape < 0.02);
    }
    Rng r({12, 0});
    CHECK_THROWS_AS(sample_gamma(0.0, r), DomainError);
}

TEST_CASE("poisson moments on both sides of the method switch")
{
    const int n = 400000;
    for (double mean : {0.5, 7.0, 49.0, 51.0, 400.0}) {
        Rng r({13, 0});
        const Moments m = moments(n, [&] { return static_cast<double>(sample_poisson(mean, r)); });
        CAPTURE(mean);
        CHECK(std::abs(m.mean - mean) < 4.0 * std::sqrt(mean / n));
        CHECK(std::abs(m.var - mean) / mean < 0.02);
    }
    Rng r({13, 0});
    CHECK(sample_poisson(0.0, r) == 0);
    CHECK_THROWS_AS(sample_poisson(-1.0, r), DomainError);
}

TEST_CASE("random waypoint distances follow their law")
{
    RfLinkParams p;
    p.D = 80.0;
    const std::int64_t n = 200000;
    auto q = sample_rwp(p, n, {14, 0}, 1);
    double s = 0.0;
    for (double x : q) {
        REQUIRE(x >= 0.0);
        REQUIRE(x <= p.D);
        s += x;
    }
    // Mean of t = q / D: sum_i C_i / (beta_i + 2).
    double mt = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        mt += RwpCoefficients::C[i] / (RwpCoefficients::beta[i] + 2.0);
    CHECK(std::abs(s / n / p.D - mt) < 0.003);
    CHECK(sup_cdf_gap(q, [&](double x) { return rwp_distance_cdf(x, p); }) < dkw_radius(n));
}

TEST_CASE("kappa = 0 power is a normalised gamma variable")
{
    RfLinkParams p;
    p.kappa = 0.0;
    p.mu = 3.0;
    Rng r({15, 0});
    const int n = 400000;
    const Moments m = moments(n, [&] { return sample_kappa_mu_power(p, r); });
    CHECK(std::abs(m.mean - 1.0) < 4.0 * std::sqrt(1.0 / 3.0 / n));
    CHECK(std::abs(m.var - 1.0 / 3.0) < 0.01);
}

TEST_CASE("kappa-mu power has unit mean and the textbook variance")
{
    RfLinkParams p;
    p.kappa = 2.0;
    p.mu = 1.5;
    Rng r({16, 0});
    const int n = 400000;
    const Moments m = moments(n, [&] { return sample_kappa_mu_power(p, r); });
    const double var = (1.0 + 2.0 * p.kappa) / (p.mu * (1.0 + p.kappa) * (1.0 + p.kappa));
    CHECK(std::abs(m.mean - 1.0) < 4.0 * std::sqrt(var / n));
    CHECK(std::abs(m.var - var) / var < 0.02);
}

TEST_CASE("SNR samples scale linearly with the average SNR for a fixed seed")
{
    RfLinkParams p;
    p.L = 2;
    RfLinkParams q = p;
    q.gbar = 2.0 * p.gbar;
    const auto a = sample_rf_snr(p, 5000, {17, 0}, 1), b = sample_rf_snr(q, 5000, {17, 0}, 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        REQUIRE(b[i] == 2.0 * a[i]);

    UowcLinkParams u;
    UowcLinkParams v = u;
    v.gbar = 2.0 * u.gbar;
    const auto c = sample_uowc_snr(u, 5000, {18, 0}, 1), d = sample_uowc_snr(v, 5000, {18, 0}, 1);
    for (std::size_t i = 0; i < c.size(); ++i)
        REQUIRE(d[i] == 2.0 * c[i]);
}

TEST_CASE("mEGG coefficient moments match the hop moment")
{
    MeggParams h;
    h.xi = 1.3;
    h.J = 0.8;
    Rng r({19, 0});
    const int n = 400000;
    const Moments m = moments(n, [&] { return sample_megg_coefficient(h, r); });
    const double m1 = megg_hop_moment(1.0, h), m2 = megg_hop_moment(2.0, h);
    CHECK(std::abs(m.mean - m1) < 4.0 * std::sqrt((m2 - m1 * m1) / n));
    CHECK(std::abs(m.var + m.mean * m.mean - m2) / m2 < 0.02);
}

TEST_CASE("degenerate turbulence concentrates the cascade")
{
    UowcLinkParams p;
    p.N = 1;
    for (MeggParams* h : {&p.hop1, &p.hop2}) {
        h->w = 1e-12;
        h->b = 1.0;
        h->a = 1.0;
        h->c = 1e6;
        h->xi = 1e6;
        h->J = 1.0;
    }
    Rng r({20, 0});
    for (int i = 0; i < 1000; ++i)
        REQUIRE(std::abs(sample_ris_cascade_amplitude(p, r) - 1.0) < 1e-3);
    p.N = 3;
    p.r = Detection::IMDD;
    p.gbar = 5.0;
    for (int i = 0; i < 1000; ++i)
        REQUIRE(std::abs(sample_ris_cascade_snr(p, r) - 45.0) < 0.1);
}

TEST_CASE("gamma-approximation sampler reproduces the matched moments")
{
    UowcLinkParams p;
    p.N = 4;
    const RisCascadeStats s = gamma_approx(p);
    Rng r({21, 0});
    const int n = 400000;
    const Moments m = moments(n, [&] { return sample_ris_gamma_approx_snr(s, 1.0, r); });
    // chi is a sum of N independent hop products.
    const double mean = p.N * s.m1, var = p.N * (s.m2 - s.m1 * s.m1);
    CHECK(std::abs(m.mean - mean) < 4.0 * std::sqrt(var / n));
    CHECK(std::abs(m.var - var) / var < 0.02);
}

TEST_CASE("correlated cascade pair")
{
    UowcLinkParams a, b;
    b.N = 3;
    Rng s({22, 5}), x({22, 3}), y({22, 4});
    CHECK_THROWS_AS(sample_ris_cascade_pair(a, b, s, x, y), DomainError);

    // With identical second hops drawn from identical streams the pair coincides.
    b = a;
    b.gbar = 3.0 * a.gbar;
    Rng s2({22, 5}), x2({22, 3}), y2({22, 3});
    for (int i = 0; i < 100; ++i) {
        const auto [m, e] = sample_ris_cascade_pair(a, b, s2, x2, y2);
        REQUIRE(e == doctest::Approx(3.0 * m).epsilon(1e-15));
    }
}
