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

// Scenario configuration files: flat "key = value" text with dotted sections.
//
//   scenario = I                 # I, II or III
//   Rs = 0.01                    # target secrecy rate, bit/s/Hz
//   rf.mu = 2                    # "rf" applies to rf_main and rf_eve
//   rf_eve.gbar_db = 40          # SNRs accept gbar (linear) or gbar_db
//   uowc.turbulence = fresh_uniform_bl2p4
//   uowc_main.hop2.xi = 2
//
// Section-wide keys ("rf.", "uowc.") are applied before link-specific ones,
// and a turbulence name before explicit hop fields, so the outcome never
// depends on the order of lines in the file.

#ifndef UWSEC_CLI_CONFIG_HPP
#define UWSEC_CLI_CONFIG_HPP

#include "uwsec/secrecy.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uwsec::cli {

class ConfigDoc {
public:
    // Duplicate keys and malformed lines raise ConfigError.
    static ConfigDoc parse(const std::string& text, const std::string& origin = "<text>");
    static ConfigDoc load(const std::string& path);

    // Replaces any previous value. Setting one of gbar / gbar_db drops the
    // other spelling in the same section.
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    // Parses "key=value".
    void set_assignment(const std::string& assignment);
    // Entries of `other` win.
    void merge(const ConfigDoc& other);
    void erase(const std::string& key);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    const std::map<std::string, std::string>& entries() const { return kv_; }

    // Entries with the given prefix ("sweep."), prefix stripped.
    std::map<std::string, std::string> section(const std::string& prefix) const;

private:
    std::map<std::string, std::string> kv_;
};

struct ResolveOptions {
    // Turbulence registry file; empty means default_registry_path().
    std::string registry_path;
};

// $UWSEC_REGISTRY, else $UWSEC_DATA/turbulence_registry.txt, else the
// data directory of the source tree this binary was built from.
std::string default_registry_path();

// Keys under "sweep." and "mc." are left to the sweep layer; any other
// unknown key is a ConfigError.
ScenarioConfig resolve(const ConfigDoc& doc, const ResolveOptions& opts = {});

// Applies one numeric or enumerated setting on top of a resolved config.
// Turbulence names are not accepted here.
void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value);
void apply_setting(ScenarioConfig& cfg, const std::string& key, double value);

// Every resolved field in a fixed order, printed round-trip exact.
std::string canonical_text(const ScenarioConfig& cfg);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);
std::string config_hash(const ScenarioConfig& cfg);

double parse_number(const std::string& text, const std::string& what);
long parse_integer(const std::string& text, const std::string& what);
Scenario parse_scenario(const std::string& text);
double db_to_linear(double db);
double linear_to_db(double x);

} // namespace uwsec::cli

#endif
