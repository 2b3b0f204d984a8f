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

#ifndef UWSEC_SECRECY_HPP
#define UWSEC_SECRECY_HPP

#include "uwsec/dual_hop.hpp"
#include "uwsec/specfun/series_accel.hpp"

#include <string>
#include <vector>

namespace uwsec {

// I: eavesdropper on the RF hop only. II: on the optical hop only.
// III: on both hops at once.
enum class Scenario { I = 1, II = 2, III = 3 };

const char* scenario_name(Scenario s);

struct ScenarioConfig {
    RfLinkParams rf_main;
    RfLinkParams rf_eve;
    UowcLinkParams uowc_main;
    UowcLinkParams uowc_eve;
    double Rs = 0.01;
    Scenario scenario = Scenario::I;

    void validate() const;
    double phi() const;
};

// How sums of Meijer G terms that share one argument are evaluated.
enum class ClosedFormMode {
    aggregated, // all terms summed under a single Mellin-Barnes contour (default)
    per_term,   // one univariate/bivariate G evaluation per term
};

struct SeriesControl {
    int z_max = 200;
    specfun::Acceleration accel = specfun::Acceleration::euler;
    bool fallback_quadrature = true;
    // Relative tolerance for contour and quadrature evaluations. Below 1e-4
    // the cross term of the scenario I outage is computed by quadrature.
    double tol = 1e-6;
    ClosedFormMode mode = ClosedFormMode::aggregated;

    void validate() const;
};

enum class Route { closed_form, series, quadrature };

const char* route_name(Route r);

struct MetricResult {
    double value = 0.0;
    double abs_error = 0.0;
    Route route = Route::closed_form;
    bool clamped = false;
    std::string note;
};

// Scenario I outage terms: P{gamma_R <= phi gamma_E}, P{gamma_D <= phi gamma_E}
// and the joint term, so that SOP = rf + uowc - cross.
struct Sop1Components {
    MetricResult rf;
    MetricResult uowc;
    MetricResult cross;
};

Sop1Components sop1_components(const ScenarioConfig& cfg, const SeriesControl& ctl = {});

// P{gamma_R <= phi gamma_E} for the RF main/eve pair.
MetricResult rf_pair_outage(const ScenarioConfig& cfg, const SeriesControl& ctl = {});
// P{gamma_D <= phi gamma_Etilde} for the optical main/eve pair.
MetricResult uowc_pair_outage(const ScenarioConfig& cfg, const SeriesControl& ctl = {});

MetricResult asc_scenario1(const ScenarioConfig& cfg, const SeriesControl& ctl = {});
MetricResult asc_quadrature(const ScenarioConfig& cfg, double rel_tol = 1e-6);

MetricResult sop1_lower(const ScenarioConfig& cfg, const SeriesControl& ctl = {});
MetricResult sop2_lower(const ScenarioConfig& cfg, const SeriesControl& ctl = {});
MetricResult sop3_lower(const ScenarioConfig& cfg, const SeriesControl& ctl = {});
// Dispatches on cfg.scenario.
MetricResult sop_lower(const ScenarioConfig& cfg, const SeriesControl& ctl = {});
// Direct numerical integration of the lower-bound outage definitions;
// independent of the Meijer G closed forms.
MetricResult sop_quadrature(const ScenarioConfig& cfg, double rel_tol = 1e-7);

double sop1_asymptotic(const ScenarioConfig& cfg);
double sop2_asymptotic(const ScenarioConfig& cfg);
double sop3_asymptotic(const ScenarioConfig& cfg);
double sop_asymptotic(const ScenarioConfig& cfg);

MetricResult spsc(const ScenarioConfig& cfg, const SeriesControl& ctl = {});
MetricResult est(const ScenarioConfig& cfg, const SeriesControl& ctl = {});

struct OptimalRate {
    double Rs = 0.0;
    double est = 0.0;
};

// Grid search followed by golden-section refinement between the neighbours
// of the best grid point.
OptimalRate est_optimal_rs(const ScenarioConfig& cfg, const std::vector<double>& rs_grid,
                           const SeriesControl& ctl = {});

} // namespace uwsec

#endif
