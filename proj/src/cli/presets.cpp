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

#include "uwsec/cli/presets.hpp"

#include "uwsec/errors.hpp"

#include <functional>
#include <map>

namespace uwsec::cli {

namespace {

SweepSpec sweep(const std::string& axis, double start, double stop, int points, Metric metric)
{
    SweepSpec s;
    s.axis = axis;
    s.range = {start, stop, points, resolve_axis(axis).snr ? AxisScale::dB : AxisScale::linear};
    s.metrics = {metric};
    s.mc_samples = 100000;
    s.seed = 1;
    return s;
}

// Cartesian product of two curve families.
std::vector<PresetCurve> cross(const std::vector<PresetCurve>& a, const std::vector<PresetCurve>& b)
{
    std::vector<PresetCurve> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            PresetCurve c{x.label + " " + y.label, x.set};
            c.set.insert(c.set.end(), y.set.begin(), y.set.end());
            out.push_back(std::move(c));
        }
    return out;
}

Preset make(const std::string& name, const std::string& title, SweepSpec s, std::vector<PresetCurve> curves,
            std::vector<std::pair<std::string, std::string>> base_set = {})
{
    Preset p{name, title, default_config(), std::move(s), std::move(curves)};
    for (const auto& [k, v] : base_set)
        p.base.set(k, v);
    return p;
}

const std::map<std::string, std::function<Preset()>>& registry()
{
    static const std::map<std::string, std::function<Preset()>> presets{
        {"fig2",
         [] {
             return make("fig2", "SOP (scenario I) vs gbar_R for mu_R = mu_E and gbar_D",
                         sweep("gbar_R", 40, 100, 13, Metric::SOP),
                         cross({{"mu=1", {{"rf.mu", "1"}}}, {"mu=2", {{"rf.mu", "2"}}}, {"mu=4", {{"rf.mu", "4"}}}},
                               {{"gbar_D=20dB", {{"uowc_main.gbar_db", "20"}}},
                                {"gbar_D=30dB", {{"uowc_main.gbar_db", "30"}}}}));
         }},
        {"fig3",
         [] {
             return make("fig3", "SOP (scenario I) vs gbar_R for N and detection type",
                         sweep("gbar_R", 40, 100, 13, Metric::SOP),
                         cross({{"N=1", {{"uowc.N", "1"}}}, {"N=2", {{"uowc.N", "2"}}}, {"N=4", {{"uowc.N", "4"}}}},
                               {{"HD", {{"uowc.r", "HD"}}}, {"IMDD", {{"uowc.r", "IMDD"}}}}));
         }},
        {"fig4",
         [] {
             return make("fig4", "ASC (scenario I) vs gbar_R for kappa_E",
                         sweep("gbar_R", 40, 100, 13, Metric::ASC),
                         {{"kappa_E=1", {{"rf_eve.kappa", "1"}}},
                          {"kappa_E=3", {{"rf_eve.kappa", "3"}}},
                          {"kappa_E=5", {{"rf_eve.kappa", "5"}}}});
         }},
        {"fig5",
         [] {
             return make("fig5", "ASC (scenario I) vs gbar_R for D_R, D_E and gbar_E",
                         sweep("gbar_R", 40, 100, 13, Metric::ASC),
                         {{"D_R=50 D_E=50 gbar_E=30dB", {}},
                          {"D_R=100 D_E=50 gbar_E=30dB", {{"rf_main.D", "100"}}},
                          {"D_R=50 D_E=100 gbar_E=30dB", {{"rf_eve.D", "100"}}},
                          {"D_R=50 D_E=50 gbar_E=40dB", {{"rf_eve.gbar_db", "40"}}}});
         }},
        {"fig6",
         [] {
             return make("fig6", "SOP (scenario II) vs gbar_D for main-link turbulence and gbar_Etilde",
                         sweep("gbar_D", 0, 40, 11, Metric::SOP),
                         cross({{"main=fresh_uniform_bl2p4", {{"uowc_main.turbulence", "fresh_uniform_bl2p4"}}},
                                {"main=fresh_uniform_bl4p7", {{"uowc_main.turbulence", "fresh_uniform_bl4p7"}}}},
                               {{"gbar_Etilde=5dB", {{"uowc_eve.gbar_db", "5"}}},
                                {"gbar_Etilde=15dB", {{"uowc_eve.gbar_db", "15"}}}}),
                         {{"scenario", "II"}, {"uowc_eve.turbulence", "fresh_uniform_bl2p4"}});
         }},
        {"fig7",
         [] {
             return make("fig7", "SOP (scenario II) vs gbar_D for main and eavesdropper turbulence and gbar_Etilde",
                         sweep("gbar_D", 0, 40, 11, Metric::SOP),
                         cross({{"main=bl2p4 eve=bl2p4",
                                 {{"uowc_main.turbulence", "fresh_uniform_bl2p4"},
                                  {"uowc_eve.turbulence", "fresh_uniform_bl2p4"}}},
                                {"main=bl4p7 eve=bl2p4",
                                 {{"uowc_main.turbulence", "fresh_uniform_bl4p7"},
                                  {"uowc_eve.turbulence", "fresh_uniform_bl2p4"}}},
                                {"main=bl2p4 eve=bl4p7",
                                 {{"uowc_main.turbulence", "fresh_uniform_bl2p4"},
                                  {"uowc_eve.turbulence", "fresh_uniform_bl4p7"}}}},
                               {{"gbar_Etilde=5dB", {{"uowc_eve.gbar_db", "5"}}},
                                {"gbar_Etilde=15dB", {{"uowc_eve.gbar_db", "15"}}}}),
                         {{"scenario", "II"}});
         }},
        {"fig8",
         [] {
             return make("fig8", "EST (scenario II) vs gbar_D for gbar_Etilde",
                         sweep("gbar_D", 0, 40, 11, Metric::EST),
                         {{"gbar_Etilde=5dB", {{"uowc_eve.gbar_db", "5"}}},
                          {"gbar_Etilde=15dB", {{"uowc_eve.gbar_db", "15"}}},
                          {"gbar_Etilde=25dB", {{"uowc_eve.gbar_db", "25"}}}},
                         {{"scenario", "II"}});
         }},
        {"fig9",
         [] {
             return make("fig9", "SOP (scenario III) vs gbar_D for pointing-error severity at D and Etilde",
                         sweep("gbar_D", 0, 40, 11, Metric::SOP),
                         {{"xi_D=1 xi_Etilde=2", {{"uowc_main.hop2.xi", "1"}, {"uowc_eve.hop2.xi", "2"}}},
                          {"xi_D=2 xi_Etilde=2", {{"uowc_main.hop2.xi", "2"}, {"uowc_eve.hop2.xi", "2"}}},
                          {"xi_D=2 xi_Etilde=1", {{"uowc_main.hop2.xi", "2"}, {"uowc_eve.hop2.xi", "1"}}}},
                         {{"scenario", "III"}});
         }},
        {"fig10",
         [] {
             return make("fig10", "SPSC vs gbar_D for the three eavesdropping scenarios",
                         sweep("gbar_D", 0, 40, 11, Metric::SPSC),
                         {{"scenario=I", {{"scenario", "I"}}},
                          {"scenario=II", {{"scenario", "II"}}},
                          {"scenario=III", {{"scenario", "III"}}}});
         }},
        {"fig11",
         [] {
             return make("fig11", "SPSC (scenario I) vs gbar_R with and without the RIS (N=1 baseline)",
                         sweep("gbar_R", 40, 100, 13, Metric::SPSC),
                         cross({{"N=1", {{"uowc.N", "1"}}}, {"N=4", {{"uowc.N", "4"}}}},
                               {{"gbar_D=20dB", {{"uowc_main.gbar_db", "20"}}},
                                {"gbar_D=30dB", {{"uowc_main.gbar_db", "30"}}}}));
         }},
        {"diversity",
         [] {
             return make("diversity", "SOP (scenario I) vs gbar_D for L_R = L_E",
                         sweep("gbar_D", 0, 40, 11, Metric::SOP),
                         {{"L=1", {{"rf.L", "1"}}}, {"L=2", {{"rf.L", "2"}}}, {"L=3", {{"rf.L", "3"}}}});
         }},
    };
    return presets;
}

} // namespace

ConfigDoc default_config()
{
    return ConfigDoc::parse(R"(
scenario = I
Rs = 0.01
rf.kappa = 1
rf.mu = 2
rf.alpha = 2
rf.D = 50
rf.L = 1
rf.varrho = 1
rf_main.gbar_db = 60
rf_eve.gbar_db = 30
uowc.N = 2
uowc.r = HD
uowc.xi = 1
uowc.J = 1
uowc_main.gbar_db = 20
uowc_eve.gbar_db = 10
)",
                            "<defaults>");
}

std::vector<std::string> preset_names()
{
    std::vector<std::string> names;
    for (const auto& [k, v] : registry())
        names.push_back(k);
    return names;
}

Preset figure_preset(const std::string& name)
{
    const auto& r = registry();
    const auto it = r.find(name);
    if (it == r.end()) {
        std::string known;
        for (const auto& n : preset_names())
            known += (known.empty() ? "" : ", ") + n;
        throw UnknownPreset("unknown preset '" + name + "' (known: " + known + ")");
    }
    return it->second();
}

std::vector<MetricCurve> run_preset(const Preset& preset, const ConfigDoc& overrides, const RunOptions& opts,
                                    const ResolveOptions& resolve_opts)
{
    std::vector<MetricCurve> out;
    for (const auto& curve : preset.curves) {
        ConfigDoc doc = preset.base;
        doc.merge(overrides);
        for (const auto& [k, v] : curve.set)
            doc.set(k, v);
        MetricCurve c = run_sweep(preset.sweep, resolve(doc, resolve_opts), opts);
        c.label = curve.label;
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace uwsec::cli
