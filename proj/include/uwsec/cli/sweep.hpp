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

// One-dimensional parameter sweeps of the secrecy metrics, with closed-form,
// asymptotic and Monte Carlo columns.

#ifndef UWSEC_CLI_SWEEP_HPP
#define UWSEC_CLI_SWEEP_HPP

#include "uwsec/cli/config.hpp"
#include "uwsec/montecarlo/estimators.hpp"
#include "uwsec/secrecy.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uwsec::cli {

enum class Metric { ASC, SOP, SPSC, EST };

const char* metric_name(Metric m);
Metric parse_metric(const std::string& name);
// Comma-separated list, e.g. "SOP,ASC". Duplicates are rejected.
std::vector<Metric> parse_metrics(const std::string& list);

enum class AxisScale { dB, linear };

const char* scale_name(AxisScale s);
AxisScale parse_scale(const std::string& name);

struct SweepRange {
    double start = 0.0;
    double stop = 1.0;
    int points = 2;
    AxisScale scale = AxisScale::linear;

    // Evenly spaced in the stated scale (dB values for dB axes).
    std::vector<double> values() const;
};

// Named axes map onto configuration keys:
//   gbar_R -> rf_main.gbar        gbar_E      -> rf_eve.gbar
//   gbar_D -> uowc_main.gbar      gbar_Etilde -> uowc_eve.gbar
//   Rs -> Rs   N -> uowc.N   L -> rf.L   mu -> rf.mu   xi -> uowc_main.xi
// Any other configuration key may be swept directly.
struct AxisInfo {
    std::string name;
    std::vector<std::string> keys;
    bool snr = false;
    bool integer = false;
};

// Sets start, stop and points from "start:stop:points"; the scale is kept.
void parse_range(SweepRange& range, const std::string& text, const std::string& what);

AxisInfo resolve_axis(const std::string& axis);

struct SweepSpec {
    std::string axis = "gbar_R";
    SweepRange range;
    std::vector<Metric> metrics{Metric::SOP};
    std::optional<Scenario> scenario;
    std::int64_t mc_samples = 0;
    std::uint64_t seed = 1;

    void validate() const;
};

// Reads sweep.axis, sweep.start, sweep.stop, sweep.points, sweep.scale,
// sweep.metrics, sweep.scenario, sweep.mc_samples and sweep.seed, plus
// mc.samples and mc.seed; absent keys keep the values of `base`. Without
// sweep.scale, an axis set here is read in dB when it is an SNR axis.
SweepSpec sweep_from_config(const ConfigDoc& doc, SweepSpec base = {});

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct MetricCell {
    double closed = kNaN;
    double asym = kNaN;
    double mc = kNaN;
    double mc_hw = kNaN;
};

struct VerifyTolerance {
    double rel = 0.05;
    double abs = 0.005;
};

struct RunOptions {
    SeriesControl ctl;
    // Worker threads over sweep points; 0 picks the hardware concurrency.
    int threads = 0;
    mc::UowcSampling mc_model = mc::UowcSampling::physical;
    // When set, every cell with both a closed-form and an MC value is
    // checked and breaches are reported in the status column.
    std::optional<VerifyTolerance> verify;
};

struct MetricCurve {
    std::string label;
    SweepSpec spec;
    AxisInfo axis;
    std::vector<double> axis_values;            // in the sweep's scale
    std::vector<std::vector<MetricCell>> cells; // [point][metric]
    std::vector<std::string> status;            // "ok" or a description
    std::vector<bool> nonconverged;
    std::vector<bool> breached;
    std::string config_hash;
    double runtime_seconds = 0.0;

    bool any_nonconvergence() const;
    bool any_breach() const;
};

// Deterministic for a fixed seed: every point is evaluated independently and
// the Monte Carlo stream of point k is k.
MetricCurve run_sweep(const SweepSpec& spec, const ScenarioConfig& cfg, const RunOptions& opts = {});

// Evaluates `count` independent jobs on a pool of workers; results are
// indexed by job, so their order does not depend on completion order.
void parallel_for(int count, int threads, const std::function<void(int)>& job);

} // namespace uwsec::cli

#endif
