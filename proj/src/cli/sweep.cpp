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

#include "uwsec/cli/sweep.hpp"

#include "uwsec/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace uwsec::cli {

namespace {

std::string upper(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

struct PointResult {
    std::vector<MetricCell> cells;
    std::vector<std::string> problems;
    bool nonconverged = false;
    bool breached = false;
};

// Runs one evaluation and turns library errors into a row annotation.
template <class F>
double guarded(PointResult& out, const std::string& what, F&& f)
{
    try {
        return f();
    } catch (const NonConvergence& e) {
        std::ostringstream os;
        os << what << " did not converge (best " << e.best_estimate() << ")";
        out.problems.push_back(os.str());
    } catch (const Error& e) {
        out.problems.push_back(what + ": " + e.what());
    }
    out.nonconverged = true;
    return kNaN;
}

PointResult eval_point(const ScenarioConfig& cfg, const SweepSpec& spec, int index, const RunOptions& opts,
                       int mc_threads)
{
    PointResult out;
    out.cells.resize(spec.metrics.size());

    mc::McOptions mopt;
    mopt.seed = mc::RngSeed{spec.seed, static_cast<std::uint32_t>(index)};
    mopt.uowc = opts.mc_model;
    mopt.threads = mc_threads;
    const bool with_mc = spec.mc_samples > 0;

    ScenarioConfig at_zero = cfg;
    at_zero.Rs = 0.0;
    std::optional<double> sop_asym, sop_asym_zero;
    std::optional<mc::McEstimate> sop_mc, sop_mc_zero;
    auto asym = [&](std::optional<double>& slot, const ScenarioConfig& c) {
        if (!slot)
            slot = guarded(out, "asymptotic SOP", [&] { return sop_asymptotic(c); });
        return *slot;
    };
    auto mc_sop = [&](std::optional<mc::McEstimate>& slot, const ScenarioConfig& c) {
        if (!slot)
            slot = mc::estimate_sop(c, spec.mc_samples, mopt).lower;
        return *slot;
    };

    for (std::size_t j = 0; j < spec.metrics.size(); ++j) {
        MetricCell& cell = out.cells[j];
        switch (spec.metrics[j]) {
        case Metric::SOP:
            cell.closed = guarded(out, "SOP", [&] { return sop_lower(cfg, opts.ctl).value; });
            cell.asym = asym(sop_asym, cfg);
            if (with_mc) {
                const auto m = mc_sop(sop_mc, cfg);
                cell.mc = m.value;
                cell.mc_hw = m.half_width_3sigma;
            }
            break;
        case Metric::SPSC:
            cell.closed = guarded(out, "SPSC", [&] { return spsc(cfg, opts.ctl).value; });
            cell.asym = 1.0 - asym(sop_asym_zero, at_zero);
            if (with_mc) {
                const auto m = mc_sop(sop_mc_zero, at_zero);
                cell.mc = 1.0 - m.value;
                cell.mc_hw = m.half_width_3sigma;
            }
            break;
        case Metric::EST:
            cell.closed = guarded(out, "EST", [&] { return est(cfg, opts.ctl).value; });
            cell.asym = cfg.Rs * (1.0 - asym(sop_asym, cfg));
            if (with_mc) {
                const auto m = mc_sop(sop_mc, cfg);
                cell.mc = cfg.Rs * (1.0 - m.value);
                cell.mc_hw = cfg.Rs * m.half_width_3sigma;
            }
            break;
        case Metric::ASC:
            cell.closed = guarded(out, "ASC", [&] { return asc_scenario1(cfg, opts.ctl).value; });
            if (with_mc) {
                const auto m = mc::estimate_asc(cfg, spec.mc_samples, mopt);
                cell.mc = m.value;
                cell.mc_hw = m.half_width_3sigma;
            }
            break;
        }
        if (opts.verify && with_mc && std::isfinite(cell.closed)) {
            const double allowed = std::max({opts.verify->rel * std::abs(cell.mc), opts.verify->abs, cell.mc_hw});
            const double gap = std::abs(cell.closed - cell.mc);
            if (!(gap <= allowed)) {
                std::ostringstream os;
                os << metric_name(spec.metrics[j]) << " closed-form vs MC gap " << gap << " exceeds " << allowed;
                out.problems.push_back(os.str());
                out.breached = true;
            }
        }
    }
    return out;
}

} // namespace

const char* metric_name(Metric m)
{
    switch (m) {
    case Metric::ASC:
        return "ASC";
    case Metric::SOP:
        return "SOP";
    case Metric::SPSC:
        return "SPSC";
    case Metric::EST:
        return "EST";
    }
    return "?";
}

Metric parse_metric(const std::string& name)
{
    const std::string u = upper(trim(name));
    for (Metric m : {Metric::ASC, Metric::SOP, Metric::SPSC, Metric::EST})
        if (u == metric_name(m))
            return m;
    throw ConfigError("unknown metric '" + name + "' (expected ASC, SOP, SPSC or EST)");
}

std::vector<Metric> parse_metrics(const std::string& list)
{
    std::vector<Metric> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const Metric m = parse_metric(item);
        if (std::find(out.begin(), out.end(), m) != out.end())
            throw ConfigError("metric '" + std::string(metric_name(m)) + "' listed twice");
        out.push_back(m);
    }
    if (out.empty())
        throw ConfigError("empty metric list");
    return out;
}

const char* scale_name(AxisScale s) { return s == AxisScale::dB ? "dB" : "linear"; }

AxisScale parse_scale(const std::string& name)
{
    const std::string u = upper(trim(name));
    if (u == "DB")
        return AxisScale::dB;
    if (u == "LINEAR" || u == "LIN")
        return AxisScale::linear;
    throw ConfigError("unknown axis scale '" + name + "' (expected dB or linear)");
}

std::vector<double> SweepRange::values() const
{
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        v[i] = i == points - 1 ? stop : start + (stop - start) * i / (points - 1);
    return v;
}

AxisInfo resolve_axis(const std::string& axis)
{
    AxisInfo a;
    a.name = axis;
    if (axis == "gbar_R")
        a.keys = {"rf_main.gbar"};
    else if (axis == "gbar_E")
        a.keys = {"rf_eve.gbar"};
    else if (axis == "gbar_D")
        a.keys = {"uowc_main.gbar"};
    else if (axis == "gbar_Etilde")
        a.keys = {"uowc_eve.gbar"};
    else if (axis == "N")
        a.keys = {"uowc.N"};
    else if (axis == "L")
        a.keys = {"rf.L"};
    else if (axis == "mu")
        a.keys = {"rf.mu"};
    else if (axis == "xi")
        a.keys = {"uowc_main.xi"};
    else if (axis.empty())
        throw ConfigError("empty sweep axis");
    else
        a.keys = {axis};

    for (const auto& k : a.keys) {
        const auto dot = k.rfind('.');
        const std::string field = dot == std::string::npos ? k : k.substr(dot + 1);
        if (field == "gbar")
            a.snr = true;
        if (field == "N" || field == "L" || field == "bessel_p" || field == "r")
            a.integer = true;
        if (field == "gbar_db" || field == "turbulence" || field == "scenario")
            throw ConfigError("cannot sweep '" + k + "'; sweep the linear key with a dB scale instead");
    }
    // Reject unknown keys up front rather than at the first point.
    ScenarioConfig probe;
    for (const auto& k : a.keys)
        apply_setting(probe, k, k == "Rs" ? 0.0 : 1.0);
    return a;
}

void SweepSpec::validate() const
{
    const AxisInfo a = resolve_axis(axis);
    if (range.points < 2)
        throw ConfigError("sweep needs at least 2 points");
    if (!(range.start < range.stop))
        throw ConfigError("sweep start must be below stop");
    if (range.scale == AxisScale::dB && !a.snr)
        throw ConfigError("dB scale is only valid on SNR axes, not '" + axis + "'");
    if (metrics.empty())
        throw ConfigError("no metrics requested");
    if (mc_samples != 0 && mc_samples < 10000)
        throw ConfigError("mc_samples must be 0 (off) or at least 10000");
}

void parse_range(SweepRange& range, const std::string& text, const std::string& what)
{
    std::stringstream ss(text);
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n))
        throw ConfigError(what + " expects start:stop:points");
    range.start = parse_number(a, what + " start");
    range.stop = parse_number(b, what + " stop");
    range.points = static_cast<int>(parse_integer(n, what + " points"));
}

SweepSpec sweep_from_config(const ConfigDoc& doc, SweepSpec base)
{
    for (const auto& [k, v] : doc.section("mc.")) {
        const std::string key = "mc." + k;
        if (k == "samples")
            base.mc_samples = parse_integer(v, key);
        else if (k == "seed")
            base.seed = static_cast<std::uint64_t>(parse_integer(v, key));
        else
            throw ConfigError("unknown configuration key '" + key + "'");
    }
    bool axis_set = false, scale_set = false;
    for (const auto& [k, v] : doc.section("sweep.")) {
        const std::string key = "sweep." + k;
        if (k == "axis") {
            base.axis = v;
            axis_set = true;
        }
        else if (k == "start")
            base.range.start = parse_number(v, key);
        else if (k == "stop")
            base.range.stop = parse_number(v, key);
        else if (k == "points")
            base.range.points = static_cast<int>(parse_integer(v, key));
        else if (k == "range")
            parse_range(base.range, v, key);
        else if (k == "scale") {
            base.range.scale = parse_scale(v);
            scale_set = true;
        }
        else if (k == "metrics")
            base.metrics = parse_metrics(v);
        else if (k == "scenario")
            base.scenario = parse_scenario(v);
        else if (k == "mc_samples")
            base.mc_samples = parse_integer(v, key);
        else if (k == "seed")
            base.seed = static_cast<std::uint64_t>(parse_integer(v, key));
        else
            throw ConfigError("unknown configuration key '" + key + "'");
    }
    // Same default as the command line: SNR axes are given in dB.
    if (axis_set && !scale_set)
        base.range.scale = resolve_axis(base.axis).snr ? AxisScale::dB : AxisScale::linear;
    return base;
}

bool MetricCurve::any_nonconvergence() const
{
    return std::find(nonconverged.begin(), nonconverged.end(), true) != nonconverged.end();
}

bool MetricCurve::any_breach() const
{
    return std::find(breached.begin(), breached.end(), true) != breached.end();
}

void parallel_for(int count, int threads, const std::function<void(int)>& job)
{
    int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < count && !failed; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    if (!failed.exchange(true))
                        failure = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

MetricCurve run_sweep(const SweepSpec& spec, const ScenarioConfig& cfg, const RunOptions& opts)
{
    const auto t0 = std::chrono::steady_clock::now();
    spec.validate();
    opts.ctl.validate();

    MetricCurve curve;
    curve.spec = spec;
    curve.axis = resolve_axis(spec.axis);
    curve.axis_values = spec.range.values();

    ScenarioConfig base = cfg;
    if (spec.scenario)
        base.scenario = *spec.scenario;
    if (base.scenario != Scenario::I && std::find(spec.metrics.begin(), spec.metrics.end(), Metric::ASC) != spec.metrics.end())
        throw ConfigError("ASC is defined for scenario I only");
    curve.config_hash = config_hash(base);

    const int n = spec.range.points;
    std::vector<ScenarioConfig> configs(n, base);
    for (int i = 0; i < n; ++i) {
        double v = curve.axis_values[i];
        if (spec.range.scale == AxisScale::dB)
            v = db_to_linear(v);
        if (curve.axis.integer) {
            if (std::abs(v - std::round(v)) > 1e-9)
                throw ConfigError("axis '" + spec.axis + "' takes integer values");
            v = std::round(v);
        }
        for (const auto& k : curve.axis.keys)
            apply_setting(configs[i], k, v);
        try {
            configs[i].validate();
        } catch (const DomainError& e) {
            throw ConfigError("sweep point " + std::to_string(i) + ": " + e.what());
        }
    }

    const int workers = opts.threads > 0 ? opts.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    // With several points in flight each MC estimate stays single-threaded;
    // its value does not depend on the thread count either way.
    const int mc_threads = std::min(workers, n) > 1 ? 1 : opts.threads;

    std::vector<PointResult> results(n);
    parallel_for(n, workers, [&](int i) { results[i] = eval_point(configs[i], spec, i, opts, mc_threads); });

    for (auto& r : results) {
        curve.cells.push_back(std::move(r.cells));
        std::string status = "ok";
        if (!r.problems.empty()) {
            status.clear();
            for (std::size_t k = 0; k < r.problems.size(); ++k)
                status += (k ? "; " : "") + r.problems[k];
        }
        curve.status.push_back(status);
        curve.nonconverged.push_back(r.nonconverged);
        curve.breached.push_back(r.breached);
    }
    curve.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return curve;
}

} // namespace uwsec::cli
