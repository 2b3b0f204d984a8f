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
#include "uwsec/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace uwsec;
using doctest::Approx;

namespace {

ScenarioConfig base(Scenario s = Scenario::I)
{
    ScenarioConfig c;
    c.rf_main.gbar = 1e5;
    c.rf_eve.gbar = 1e4;
    c.uowc_main.gbar = 100.0;
    c.uowc_eve.gbar = 10.0;
    c.Rs = 0.5;
    c.scenario = s;
    return c;
}

const Scenario kAll[] = {Scenario::I, Scenario::II, Scenario::III};

mc::McOptions gamma_mc(std::uint64_t seed)
{
    mc::McOptions o;
    o.seed = mc::RngSeed{seed, 0};
    o.uowc = mc::UowcSampling::gamma_approx;
    o.threads = 1;
    return o;
}

// Scales both main-link SNRs, eavesdroppers fixed.
ScenarioConfig scaled(ScenarioConfig c, double t)
{
    c.rf_main.gbar *= t;
    c.uowc_main.gbar *= t;
    return c;
}

} // namespace

TEST_CASE("closed-form routes agree with direct quadrature")
{
    for (double kappa : {0.0, 1.0})
        for (Detection r : {Detection::HD, Detection::IMDD})
            for (Scenario s : kAll) {
                ScenarioConfig c = base(s);
                c.rf_main.kappa = c.rf_eve.kappa = kappa;
                c.uowc_main.r = c.uowc_eve.r = r;
                const MetricResult agg = sop_lower(c);
                const MetricResult quad = sop_quadrature(c, 1e-9);
                CHECK(agg.value == Approx(quad.value).epsilon(1e-7));
                CHECK(agg.value >= 0.0);
                CHECK(agg.value <= 1.0);
            }
}

TEST_CASE("per-term evaluation agrees with the aggregated contour")
{
    ScenarioConfig c = base();
    c.rf_main.kappa = c.rf_eve.kappa = 0.0;
    SeriesControl per;
    per.mode = ClosedFormMode::per_term;
    per.tol = 1e-4; // bivariate cross term by double contour
    for (Scenario s : kAll) {
        c.scenario = s;
        CHECK(sop_lower(c, per).value == Approx(sop_lower(c).value).epsilon(1e-4));
    }
    const Sop1Components a = sop1_components(c), b = sop1_components(c, per);
    CHECK(a.rf.value == Approx(b.rf.value).epsilon(1e-8));
    CHECK(a.uowc.value == Approx(b.uowc.value).epsilon(1e-8));
    CHECK(a.cross.value == Approx(b.cross.value).epsilon(1e-4));
}

TEST_CASE("scenario I decomposes into pair outages and a cross term")
{
    const ScenarioConfig c = base();
    const Sop1Components k = sop1_components(c);
    CHECK(sop1_lower(c).value == Approx(k.rf.value + k.uowc.value - k.cross.value).epsilon(1e-12));
    CHECK(rf_pair_outage(c).value == Approx(k.rf.value).epsilon(1e-12));
    CHECK(k.cross.value <= std::min(k.rf.value, k.uowc.value) * (1.0 + 1e-9));
}

TEST_CASE("secrecy identities hold exactly")
{
    for (Scenario s : kAll) {
        ScenarioConfig c = base(s);
        ScenarioConfig zero = c;
        zero.Rs = 0.0;
        CHECK(spsc(c).value == 1.0 - sop_lower(zero).value);
        CHECK(est(c).value == c.Rs * (1.0 - sop_lower(c).value));

        double prev = -1.0;
        for (double rs : {0.0, 0.05, 0.2, 0.5, 1.0, 2.0, 4.0}) {
            c.Rs = rs;
            const double v = sop_lower(c).value;
            CHECK(v >= prev);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            prev = v;
        }
    }
}

TEST_CASE("scenario II at zero rate reduces to the optical pair")
{
    ScenarioConfig c = base(Scenario::II);
    c.Rs = 0.0;
    CHECK(sop2_lower(c).value == Approx(uowc_pair_outage(c).value).epsilon(1e-10));
    // Scenario III combines the RF pair with the optical pair.
    c.scenario = Scenario::III;
    const double rf = rf_pair_outage(c).value, op = uowc_pair_outage(c).value;
    CHECK(sop3_lower(c).value == Approx(1.0 - (1.0 - rf) * (1.0 - op)).epsilon(1e-10));
}

TEST_CASE("closed forms match gamma-law Monte Carlo")
{
    const std::int64_t n = 400000;
    for (Scenario s : kAll) {
        const ScenarioConfig c = base(s);
        const mc::SopEstimate e = mc::estimate_sop(c, n, gamma_mc(17));
        CHECK(std::abs(sop_lower(c).value - e.lower.value) <= e.lower.half_width_3sigma);
        // The lower-bound event is contained in the exact outage event.
        CHECK(e.lower.value <= e.exact.value);
        CHECK(sop_lower(c).value <= e.exact.value + e.exact.half_width_3sigma);
    }
    const ScenarioConfig c = base();
    const mc::McEstimate a = mc::estimate_asc(c, n, gamma_mc(19));
    CHECK(std::abs(asc_scenario1(c).value - a.value) <= std::max(a.half_width_3sigma, 0.03 * a.value));
}

TEST_CASE("ASC closed form and quadrature agree; ASC falls as kappa_E rises")
{
    ScenarioConfig c = base();
    const MetricResult a = asc_scenario1(c);
    CHECK(a.value == Approx(asc_quadrature(c, 1e-9).value).epsilon(1e-7));
    CHECK(a.value > 0.0);
    double prev = a.value;
    for (double k : {2.0, 5.0}) {
        c.rf_eve.kappa = k;
        const double v = asc_scenario1(c).value;
        CHECK(v < prev);
        CHECK(v >= 0.0);
        prev = v;
    }
}

TEST_CASE("asymptotes converge to the exact lower bound")
{
    for (Scenario s : kAll) {
        ScenarioConfig c = base(s);
        c.rf_main.mu = c.rf_eve.mu = 1.0;
        double prev_err = 1e300;
        for (double t : {1e4, 1e6, 1e8}) {
            const ScenarioConfig h = scaled(c, t);
            const double err = std::abs(sop_asymptotic(h) / sop_lower(h).value - 1.0);
            CHECK(err < prev_err);
            prev_err = err;
        }
        CHECK(prev_err < 0.02);
    }
}

TEST_CASE("outage slope equals the weakest hop's diversity order")
{
    // mu_R = 1 puts the RF diversity (L mu = 1) well below the optical one.
    ScenarioConfig c = base();
    c.rf_main.mu = c.rf_eve.mu = 1.0;
    const double t1 = 1e8, t2 = 1e9;
    const double slope = -std::log(sop_lower(scaled(c, t2)).value / sop_lower(scaled(c, t1)).value) / std::log(t2 / t1);
    CHECK(slope == Approx(1.0).epsilon(0.05));

    // With mu = 2 the optical main link limits scenario II: rho_D / r_D.
    c.scenario = Scenario::II;
    c.rf_main.mu = c.rf_eve.mu = 2.0;
    const double rho = gamma_approx(c.uowc_main).rho;
    const double s2 = -std::log(sop_lower(scaled(c, t2)).value / sop_lower(scaled(c, t1)).value) / std::log(t2 / t1);
    CHECK(s2 == Approx(rho).epsilon(0.05));
}

TEST_CASE("scenario III keeps relative precision far below machine epsilon")
{
    ScenarioConfig c = base(Scenario::III);
    const double t1 = 1e11, t2 = 1e12;
    const double a = sop_lower(scaled(c, t1)).value, b = sop_lower(scaled(c, t2)).value;
    REQUIRE(b > 0.0);
    CHECK(b < 1e-15);
    CHECK(b / sop_asymptotic(scaled(c, t2)) == Approx(1.0).epsilon(1e-3));
    const double order = std::min({c.rf_main.L * c.rf_main.mu, gamma_approx(c.uowc_main).rho / c.uowc_main.r_int(),
                                   3.0 / c.rf_eve.alpha});
    CHECK(-std::log(b / a) / std::log(t2 / t1) == Approx(order).epsilon(0.05));
}

TEST_CASE("EST optimum over the rate")
{
    const ScenarioConfig c = base(Scenario::II);
    std::vector<double> grid;
    for (double r = 0.25; r <= 8.0; r += 0.25)
        grid.push_back(r);
    const OptimalRate best = est_optimal_rs(c, grid);
    CHECK(best.Rs > grid.front());
    CHECK(best.Rs < grid.back());
    for (double r : grid) {
        ScenarioConfig x = c;
        x.Rs = r;
        CHECK(est(x).value <= best.est * (1.0 + 1e-9));
    }
    // Stronger main link moves the optimum to a higher rate.
    const OptimalRate stronger = est_optimal_rs(scaled(c, 10.0), grid);
    CHECK(stronger.Rs > best.Rs);

    // Hopeless link: the smallest rate wins with EST close to zero.
    ScenarioConfig bad = c;
    bad.uowc_main.gbar = 1e-3;
    bad.uowc_eve.gbar = 1e3;
    const OptimalRate none = est_optimal_rs(bad, grid);
    CHECK(none.Rs == Approx(grid.front()).epsilon(0.5));
    CHECK(none.est < 1e-3);
    CHECK_THROWS_AS(est_optimal_rs(c, {}), DomainError);
}

TEST_CASE("invalid configurations are rejected")
{
    ScenarioConfig c = base();
    c.Rs = -0.1;
    CHECK_THROWS_AS(sop_lower(c), DomainError);
    c = base();
    SeriesControl ctl;
    ctl.tol = 0.0;
    CHECK_THROWS_AS(sop_lower(c, ctl), DomainError);
}
