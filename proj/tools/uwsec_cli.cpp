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

// uwsec: sweeps, figure presets, closed-form vs Monte Carlo verification and
// single-point Monte Carlo estimates.
//
// Exit codes: 0 ok, 1 usage or configuration error, 2 verification
// tolerance breach, 3 non-convergence of a closed-form evaluation.

#include "uwsec/cli/config.hpp"
#include "uwsec/cli/csv.hpp"
#include "uwsec/cli/presets.hpp"
#include "uwsec/cli/sweep.hpp"
#include "uwsec/errors.hpp"
#include "uwsec/montecarlo/estimators.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace uwsec;
using namespace uwsec::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBreach = 2;
constexpr int kExitNonConvergence = 3;

struct Common {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    std::optional<double> tol;
    std::string format = "csv";
    std::vector<std::string> sets;
    int threads = 0;
    std::string mc_model = "physical";
    std::string asc_units = "nats";
    std::string registry;
};

struct SweepFlags {
    std::string axis;
    std::string range;
    std::string scale;
    std::string metrics;
    std::string scenario;
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--config", c.config, "Scenario configuration file (key = value)");
    app->add_option("--out", c.out, "Output file (directory for presets); default stdout");
    app->add_option("--seed", c.seed, "Monte Carlo seed");
    app->add_option("--samples", c.samples, "Monte Carlo samples per point (0 disables)");
    app->add_option("--tol", c.tol, "Relative tolerance of the closed-form evaluations");
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv"}));
    app->add_option("--set", c.sets, "Override a configuration key (key=value), repeatable");
    app->add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)");
    app->add_option("--mc-model", c.mc_model, "Optical Monte Carlo model")
        ->check(CLI::IsMember({"physical", "gamma"}));
    app->add_option("--asc-units", c.asc_units, "ASC output units")->check(CLI::IsMember({"nats", "bits"}));
    app->add_option("--registry", c.registry, "Turbulence registry file");
}

void add_sweep_flags(CLI::App* app, SweepFlags& f)
{
    app->add_option("--axis", f.axis, "Swept quantity (gbar_R, gbar_D, gbar_E, gbar_Etilde, Rs, N, L, mu, xi or a key)");
    app->add_option("--range", f.range, "start:stop:points");
    app->add_option("--scale", f.scale, "dB or linear");
    app->add_option("--metrics", f.metrics, "Comma-separated list of ASC, SOP, SPSC, EST");
    app->add_option("--scenario", f.scenario, "Eavesdropping scenario I, II or III");
}

ConfigDoc load_doc(const Common& c)
{
    ConfigDoc doc = c.config.empty() ? ConfigDoc{} : ConfigDoc::load(c.config);
    for (const auto& s : c.sets)
        doc.set_assignment(s);
    return doc;
}

RunOptions run_options(const Common& c)
{
    RunOptions o;
    if (c.tol)
        o.ctl.tol = *c.tol;
    o.threads = c.threads;
    o.mc_model = c.mc_model == "gamma" ? mc::UowcSampling::gamma_approx : mc::UowcSampling::physical;
    return o;
}

ResolveOptions resolve_options(const Common& c) { return ResolveOptions{c.registry}; }

SweepSpec build_sweep(const Common& c, const SweepFlags& f, const ConfigDoc& doc)
{
    SweepSpec s = sweep_from_config(doc);
    if (!f.axis.empty()) {
        s.axis = f.axis;
        s.range.scale = resolve_axis(f.axis).snr ? AxisScale::dB : AxisScale::linear;
    }
    if (!f.range.empty())
        parse_range(s.range, f.range, "--range");
    if (!f.scale.empty())
        s.range.scale = parse_scale(f.scale);
    if (!f.metrics.empty())
        s.metrics = parse_metrics(f.metrics);
    if (!f.scenario.empty())
        s.scenario = parse_scenario(f.scenario);
    if (c.samples)
        s.mc_samples = *c.samples;
    if (c.seed)
        s.seed = *c.seed;
    s.validate();
    return s;
}

// Writes to --out (or stdout). Directories receive <stem>.csv.
void emit(const Common& c, const std::string& stem, const std::vector<MetricCurve>& curves,
          const std::vector<std::string>& metadata)
{
    CsvOptions o;
    o.asc_units = parse_asc_units(c.asc_units);
    o.metadata = metadata;
    if (c.out.empty() || c.out == "-") {
        write_csv(std::cout, curves, o);
        return;
    }
    fs::path p(c.out);
    if (fs::is_directory(p) || c.out.back() == '/') {
        fs::create_directories(p);
        p /= stem + ".csv";
    }
    std::ofstream f(p, std::ios::binary);
    if (!f)
        throw ConfigError("cannot write '" + p.string() + "'");
    write_csv(f, curves, o);
}

int outcome(const std::vector<MetricCurve>& curves)
{
    bool nonconv = false, breach = false;
    for (const auto& c : curves) {
        nonconv = nonconv || c.any_nonconvergence();
        breach = breach || c.any_breach();
    }
    if (nonconv)
        return kExitNonConvergence;
    return breach ? kExitBreach : kExitOk;
}

void report_time(const char* what, std::chrono::steady_clock::time_point t0, std::size_t rows)
{
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "uwsec %s: %zu rows in %.2f s\n", what, rows, s);
}

std::size_t row_count(const std::vector<MetricCurve>& curves)
{
    std::size_t n = 0;
    for (const auto& c : curves)
        n += c.axis_values.size();
    return n;
}

int cmd_sweep(const Common& c, const SweepFlags& f, std::optional<VerifyTolerance> verify, const char* verb)
{
    const auto t0 = std::chrono::steady_clock::now();
    const ConfigDoc doc = load_doc(c);
    SweepSpec spec = build_sweep(c, f, doc);
    if (verify && spec.mc_samples == 0)
        spec.mc_samples = 100000;
    RunOptions opts = run_options(c);
    opts.verify = verify;
    MetricCurve curve = run_sweep(spec, resolve(doc, resolve_options(c)), opts);
    curve.label = spec.axis;
    std::vector<MetricCurve> curves{curve};
    std::vector<std::string> meta{std::string("kind ") + verb,
                                  std::string("scenario ") + scenario_name(resolve(doc, resolve_options(c)).scenario),
                                  std::string("mc_model ") + c.mc_model};
    if (spec.scenario)
        meta[1] = std::string("scenario ") + scenario_name(*spec.scenario);
    emit(c, verb, curves, meta);
    report_time(verb, t0, row_count(curves));
    return outcome(curves);
}

int run_one_preset(const Common& c, const std::string& name, std::optional<VerifyTolerance> verify, const char* verb)
{
    const auto t0 = std::chrono::steady_clock::now();
    Preset p = figure_preset(name);
    if (c.samples)
        p.sweep.mc_samples = *c.samples;
    if (c.seed)
        p.sweep.seed = *c.seed;
    RunOptions opts = run_options(c);
    opts.verify = verify;
    const auto curves = run_preset(p, load_doc(c), opts, resolve_options(c));
    std::vector<std::string> meta{std::string("kind ") + verb + " " + p.name, "title " + p.title,
                                  std::string("mc_model ") + c.mc_model};
    for (const auto& s : c.sets)
        meta.push_back("set " + s);
    emit(c, p.name, curves, meta);
    report_time(p.name.c_str(), t0, row_count(curves));
    return outcome(curves);
}

int cmd_preset(const Common& c, const std::string& name, bool list, std::optional<VerifyTolerance> verify,
               const char* verb)
{
    if (list || name.empty()) {
        for (const auto& n : preset_names())
            std::cout << n << "  " << figure_preset(n).title << '\n';
        return list ? kExitOk : kExitUsage;
    }
    if (name != "all")
        return run_one_preset(c, name, verify, verb);
    if (c.out.empty() || c.out == "-")
        throw ConfigError("preset all needs --out DIR");
    Common dir = c;
    if (dir.out.back() != '/')
        dir.out += '/';
    int worst = kExitOk;
    for (const auto& n : preset_names())
        worst = std::max(worst, run_one_preset(dir, n, verify, verb));
    return worst;
}

int cmd_mc(const Common& c)
{
    const auto t0 = std::chrono::steady_clock::now();
    const ConfigDoc doc = load_doc(c);
    const ScenarioConfig cfg = resolve(doc, resolve_options(c));
    SweepSpec from_doc;
    from_doc.mc_samples = 1000000;
    from_doc = sweep_from_config(doc, from_doc);
    mc::McOptions o;
    o.seed = mc::RngSeed{c.seed.value_or(from_doc.seed), 0};
    o.threads = c.threads;
    o.uowc = c.mc_model == "gamma" ? mc::UowcSampling::gamma_approx : mc::UowcSampling::physical;
    const std::int64_t n = c.samples.value_or(from_doc.mc_samples);
    if (n < 10000)
        throw ConfigError("mc needs at least 10000 samples");

    const auto sop = mc::estimate_sop(cfg, n, o);
    ScenarioConfig zero = cfg;
    zero.Rs = 0.0;
    const auto sop0 = mc::estimate_sop(zero, n, o);
    const double ln2 = std::log(2.0);
    const bool bits = c.asc_units == "bits";

    std::ostringstream os;
    os << "# uwsec " << version() << '\n'
       << "# kind mc\n"
       << "# scenario " << scenario_name(cfg.scenario) << '\n'
       << "# config_hash " << config_hash(cfg) << '\n'
       << "# mc_samples " << n << " seed " << o.seed.seed << '\n'
       << "# mc_model " << c.mc_model << '\n'
       << "metric,value,half_width_3sigma,n_samples\n";
    auto row = [&](const char* name, double v, double hw, std::int64_t m) {
        os << name << ',' << format_number(v) << ',' << format_number(hw) << ',' << m << '\n';
    };
    row("SOP_lower [prob]", sop.lower.value, sop.lower.half_width_3sigma, n);
    row("SOP_exact [prob]", sop.exact.value, sop.exact.half_width_3sigma, n);
    row("SPSC_lower [prob]", 1.0 - sop0.lower.value, sop0.lower.half_width_3sigma, n);
    row("SPSC_exact [prob]", 1.0 - sop0.exact.value, sop0.exact.half_width_3sigma, n);
    row("EST_lower [bit/s/Hz]", cfg.Rs * (1.0 - sop.lower.value), cfg.Rs * sop.lower.half_width_3sigma, n);
    if (cfg.scenario == Scenario::I) {
        const auto asc = mc::estimate_asc(cfg, n, o);
        const double s = bits ? 1.0 / ln2 : 1.0;
        row(bits ? "ASC [bits]" : "ASC [nats]", asc.value * s, asc.half_width_3sigma * s, n);
    }

    if (c.out.empty() || c.out == "-") {
        std::cout << os.str();
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f)
            throw ConfigError("cannot write '" + c.out + "'");
        f << os.str();
    }
    report_time("mc", t0, 1);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Secrecy metrics of a mixed UAV RF / RIS-aided underwater optical relay link"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));

    Common sweep_c, preset_c, verify_c, mc_c;
    SweepFlags sweep_f, verify_f;
    std::string preset_name, verify_preset;
    bool list = false;
    VerifyTolerance vt;

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and write metric curves");
    add_common(sweep, sweep_c);
    add_sweep_flags(sweep, sweep_f);

    auto* preset = app.add_subcommand("preset", "Run a figure preset (or 'all')");
    add_common(preset, preset_c);
    preset->add_option("name", preset_name, "Preset name");
    preset->add_flag("--list", list, "List presets");

    auto* verify = app.add_subcommand("verify", "Compare closed forms with Monte Carlo per point");
    add_common(verify, verify_c);
    add_sweep_flags(verify, verify_f);
    verify->add_option("--preset", verify_preset, "Verify a figure preset instead of a sweep");
    verify->add_option("--rel-tol", vt.rel, "Allowed relative gap");
    verify->add_option("--abs-tol", vt.abs, "Allowed absolute gap");

    auto* mcmd = app.add_subcommand("mc", "Monte Carlo estimates at a single configuration");
    add_common(mcmd, mc_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sweep)
            return cmd_sweep(sweep_c, sweep_f, std::nullopt, "sweep");
        if (*preset)
            return cmd_preset(preset_c, preset_name, list, std::nullopt, "preset");
        if (*verify) {
            if (!verify_preset.empty()) {
                if (!verify_c.samples)
                    verify_c.samples = 100000;
                return cmd_preset(verify_c, verify_preset, false, vt, "verify");
            }
            return cmd_sweep(verify_c, verify_f, vt, "verify");
        }
        if (*mcmd)
            return cmd_mc(mc_c);
    } catch (const NonConvergence& e) {
        std::cerr << "uwsec: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        std::cerr << "uwsec: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
