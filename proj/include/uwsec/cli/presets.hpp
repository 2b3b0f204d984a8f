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

// Figure presets: the common parameter set plus per-figure sweeps and curve
// families. Non-swept eavesdropper SNRs are fixed explicitly in every preset
// (see default_config()) and can be overridden like any other key.

#ifndef UWSEC_CLI_PRESETS_HPP
#define UWSEC_CLI_PRESETS_HPP

#include "uwsec/cli/config.hpp"
#include "uwsec/cli/sweep.hpp"

#include <string>
#include <utility>
#include <vector>

namespace uwsec::cli {

struct PresetCurve {
    std::string label;
    std::vector<std::pair<std::string, std::string>> set;
};

struct Preset {
    std::string name;
    std::string title;
    ConfigDoc base;
    SweepSpec sweep;
    std::vector<PresetCurve> curves;
};

// alpha = 2, mu = 2, kappa = 1, D = 50 m, L = 1, N = 2, HD detection,
// xi = J = 1, Rs = 0.01; gbar_R = 60 dB, gbar_E = 30 dB, gbar_D = 20 dB,
// gbar_Etilde = 10 dB unless swept.
ConfigDoc default_config();

std::vector<std::string> preset_names();

// Throws UnknownPreset.
Preset figure_preset(const std::string& name);

// Applies base, then `overrides`, then each curve's settings; curve settings
// win over user overrides of the same key.
std::vector<MetricCurve> run_preset(const Preset& preset, const ConfigDoc& overrides, const RunOptions& opts,
                                    const ResolveOptions& resolve_opts = {});

} // namespace uwsec::cli

#endif
