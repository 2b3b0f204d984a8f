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

#include "uwsec/dual_hop.hpp"
#include "uwsec/errors.hpp"
#include "uwsec/montecarlo/estimators.hpp"
#include "uwsec/montecarlo/samplers.hpp"

#include <algorithm>
#include <cmath>

using namespace uwsec;
using doctest::Approx;

namespace {

DualHopParams params(double gbar_r, double gbar_d)
{
    DualHopParams p;
    p.rf.gbar = gbar_r;
    p.uowc.gbar = gbar_d;
    return p;
}

// Sup distance between the empirical laws of two samples.
double two_sample_gap(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double gap = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        gap = std::max(gap, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return gap;
}

} // namespace

TEST_CASE("equivalent CDF is the min of independent hops")
{
    const DualHopParams p = params(1e5, 30.0);
    const RfSnrModel rf(p.rf);
    const RisSnrModel uo(p.uowc);
    for (double g : {1e-3, 0.1, 1.0, 10.0, 100.0, 1e3}) {
        const double fr = rf.cdf(g), fd = uo.cdf(g);
        CHECK(std::abs(eq_cdf(g, p) - (1.0 - (1.0 - fr) * (1.0 - fd))) <= 1e-15);
        CHECK(eq_cdf(g, p) + eq_ccdf(g, p) == Approx(1.0).epsilon(1e-13));
        CHECK(eq_cdf(g, p) >= std::max(fr, fd));
    }
    CHECK(eq_cdf(0.0, p) == 0.0);
    CHECK_THROWS_AS(eq_cdf(-1.0, p), DomainError);
}

TEST_CASE("equivalent CDF asymptote is the sum of hop asymptotes")
{
    const DualHopParams p = params(1e5, 30.0);
    const DualHopModel m(p);
    const double r1 = m.cdf_asymptotic(1e-3) / m.cdf(1e-3);
    const double r2 = m.cdf_asymptotic(1e-6) / m.cdf(1e-6);
    CHECK(std::abs(r2 - 1.0) < std::abs(r1 - 1.0));
    CHECK(r2 == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Monte Carlo min of the hops follows the closed form")
{
    const DualHopParams p = params(1e5, 30.0);
    const RisCascadeStats s = gamma_approx(p.uowc);
    const std::int64_t n = 200000;
    const auto r = mc::sample_rf_snr(p.rf, n, mc::RngSeed{21, 1}, 1);
    const auto d = mc::sample_batch([&](mc::Rng& g) { return mc::sample_ris_gamma_approx_snr(s, p.uowc.gbar, g); }, n,
                                    mc::RngSeed{21, 2}, 1);
    std::vector<double> m(n);
    for (std::int64_t i = 0; i < n; ++i)
        m[i] = std::min(r[i], d[i]);
    CHECK(mc::sup_cdf_gap(m, [&](double g) { return eq_cdf(g, p); }) < mc::dkw_radius(n));
}

TEST_CASE("harmonic-form SNR approaches the min at high SNR")
{
    // r d / (r + d + 1) < min(r, d). Scaling both hops together leaves the
    // ratio r / d unchanged and the gap does not close; it closes when the RF
    // hop dominates the optical one.
    const std::int64_t n = 100000;
    double prev = 1.0;
    for (double scale : {1.0, 100.0, 1e4}) {
        const DualHopParams p = params(1e4 * scale, 30.0);
        const auto r = mc::sample_rf_snr(p.rf, n, mc::RngSeed{8, 1}, 1);
        const auto d = mc::sample_uowc_snr(p.uowc, n, mc::RngSeed{8, 2}, 1);
        std::vector<double> mn(n), hm(n);
        for (std::int64_t i = 0; i < n; ++i) {
            mn[i] = std::min(r[i], d[i]);
            hm[i] = r[i] * d[i] / (r[i] + d[i] + 1.0);
            REQUIRE(hm[i] <= mn[i]);
        }
        const double gap = two_sample_gap(mn, hm);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 0.01);
}
