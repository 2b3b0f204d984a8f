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

#include "uwsec/cli/config.hpp"

#include "uwsec/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <tuple>

namespace uwsec::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool is_rf_section(const std::string& s) { return s == "rf" || s == "rf_main" || s == "rf_eve"; }
bool is_uowc_section(const std::string& s) { return s == "uowc" || s == "uowc_main" || s == "uowc_eve"; }

std::pair<std::string, std::string> split_key(const std::string& key)
{
    const auto dot = key.find('.');
    if (dot == std::string::npos)
        return {key, {}};
    return {key.substr(0, dot), key.substr(dot + 1)};
}

void apply_rf(RfLinkParams& p, const std::string& field, const std::string& value, const std::string& key)
{
    if (field == "kappa")
        p.kappa = parse_number(value, key);
    else if (field == "mu")
        p.mu = parse_number(value, key);
    else if (field == "alpha")
        p.alpha = parse_number(value, key);
    else if (field == "D")
        p.D = parse_number(value, key);
    else if (field == "L")
        p.L = static_cast<int>(parse_integer(value, key));
    else if (field == "varrho")
        p.varrho = parse_number(value, key);
    else if (field == "gbar")
        p.gbar = parse_number(value, key);
    else if (field == "gbar_db")
        p.gbar = db_to_linear(parse_number(value, key));
    else if (field == "bessel_p")
        p.bessel_p = parse_integer(value, key);
    else
        throw ConfigError("unknown configuration key '" + key + "'");
}

void apply_megg(MeggParams& h, const std::string& field, const std::string& value, const std::string& key)
{
    if (field == "w")
        h.w = parse_number(value, key);
    else if (field == "lambda")
        h.lambda = parse_number(value, key);
    else if (field == "a")
        h.a = parse_number(value, key);
    else if (field == "b")
        h.b = parse_number(value, key);
    else if (field == "c")
        h.c = parse_number(value, key);
    else if (field == "xi")
        h.xi = parse_number(value, key);
    else if (field == "J")
        h.J = parse_number(value, key);
    else
        throw ConfigError("unknown configuration key '" + key + "'");
}

Detection parse_detection(const std::string& value, const std::string& key)
{
    const std::string v = lower(trim(value));
    if (v == "hd" || v == "1")
        return Detection::HD;
    if (v == "imdd" || v == "im/dd" || v == "2")
        return Detection::IMDD;
    throw ConfigError(key + ": expected HD or IMDD, got '" + value + "'");
}

void apply_uowc(UowcLinkParams& p, const std::string& field, const std::string& value, const std::string& key)
{
    if (field == "N")
        p.N = static_cast<int>(parse_integer(value, key));
    else if (field == "r")
        p.r = parse_detection(value, key);
    else if (field == "gbar")
        p.gbar = parse_number(value, key);
    else if (field == "gbar_db")
        p.gbar = db_to_linear(parse_number(value, key));
    else if (field == "xi" || field == "J") {
        apply_megg(p.hop1, field, value, key);
        apply_megg(p.hop2, field, value, key);
    } else if (field.rfind("hop1.", 0) == 0)
        apply_megg(p.hop1, field.substr(5), value, key);
    else if (field.rfind("hop2.", 0) == 0)
        apply_megg(p.hop2, field.substr(5), value, key);
    else if (field == "turbulence")
        throw ConfigError(key + ": turbulence names are resolved from a configuration document only");
    else
        throw ConfigError("unknown configuration key '" + key + "'");
}

void set_turbulence(MeggParams& h, const MeggParams& from)
{
    h.w = from.w;
    h.lambda = from.lambda;
    h.a = from.a;
    h.b = from.b;
    h.c = from.c;
}

// Application order: top level, section-wide, link-specific; inside a
// section the turbulence name first and hop fields last.
std::tuple<int, int> rank(const std::string& key)
{
    const auto [section, field] = split_key(key);
    if (field.empty())
        return {0, 0};
    const int level = (section == "rf" || section == "uowc") ? 1 : 2;
    int sub = 1;
    if (field == "turbulence")
        sub = 0;
    else if (field.rfind("hop", 0) == 0)
        sub = 2;
    return {level, sub};
}

} // namespace

double parse_number(const std::string& text, const std::string& what)
{
    const std::string t = trim(text);
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    const auto res = std::from_chars(first, last, v);
    if (t.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
        throw ConfigError(what + ": expected a finite number, got '" + text + "'");
    return v;
}

long parse_integer(const std::string& text, const std::string& what)
{
    const double v = parse_number(text, what);
    if (v != std::round(v) || std::abs(v) > 1e15)
        throw ConfigError(what + ": expected an integer, got '" + text + "'");
    return static_cast<long>(v);
}

Scenario parse_scenario(const std::string& text)
{
    const std::string v = lower(trim(text));
    if (v == "i" || v == "1")
        return Scenario::I;
    if (v == "ii" || v == "2")
        return Scenario::II;
    if (v == "iii" || v == "3")
        return Scenario::III;
    throw ConfigError("scenario: expected I, II or III, got '" + text + "'");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

ConfigDoc ConfigDoc::parse(const std::string& text, const std::string& origin)
{
    ConfigDoc doc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(where + ": empty key or value");
        if (doc.kv_.count(key))
            throw ConfigError(where + ": duplicate key '" + key + "'");
        doc.kv_[key] = value;
    }
    return doc;
}

ConfigDoc ConfigDoc::load(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open configuration file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), path);
}

void ConfigDoc::set(const std::string& key, const std::string& value)
{
    const std::string k = trim(key);
    if (k.empty())
        throw ConfigError("empty configuration key");
    const auto [section, field] = split_key(k);
    if (field == "gbar")
        kv_.erase(section + ".gbar_db");
    else if (field == "gbar_db")
        kv_.erase(section + ".gbar");
    kv_[k] = trim(value);
}

void ConfigDoc::set(const std::string& key, double value) { set(key, fmt17(value)); }

void ConfigDoc::set_assignment(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("expected key=value, got '" + assignment + "'");
    const std::string value = trim(std::string_view(assignment).substr(eq + 1));
    if (value.empty())
        throw ConfigError("empty value in '" + assignment + "'");
    set(assignment.substr(0, eq), value);
}

void ConfigDoc::merge(const ConfigDoc& other)
{
    for (const auto& [k, v] : other.kv_)
        set(k, v);
}

void ConfigDoc::erase(const std::string& key) { kv_.erase(key); }

std::optional<std::string> ConfigDoc::get(const std::string& key) const
{
    const auto it = kv_.find(key);
    if (it == kv_.end())
        return std::nullopt;
    return it->second;
}

std::map<std::string, std::string> ConfigDoc::section(const std::string& prefix) const
{
    std::map<std::string, std::string> out;
    for (auto it = kv_.lower_bound(prefix); it != kv_.end() && it->first.rfind(prefix, 0) == 0; ++it)
        out[it->first.substr(prefix.size())] = it->second;
    return out;
}

std::string default_registry_path()
{
    if (const char* p = std::getenv("UWSEC_REGISTRY"); p && *p)
        return p;
    if (const char* d = std::getenv("UWSEC_DATA"); d && *d)
        return std::string(d) + "/turbulence_registry.txt";
#ifdef UWSEC_DEFAULT_DATA_DIR
    return std::string(UWSEC_DEFAULT_DATA_DIR) + "/turbulence_registry.txt";
#else
    return "data/turbulence_registry.txt";
#endif
}

void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value)
{
    const auto [section, field] = split_key(key);
    if (field.empty()) {
        if (key == "scenario")
            cfg.scenario = parse_scenario(value);
        else if (key == "Rs")
            cfg.Rs = parse_number(value, key);
        else
            throw ConfigError("unknown configuration key '" + key + "'");
        return;
    }
    if (is_rf_section(section)) {
        if (section != "rf_eve")
            apply_rf(cfg.rf_main, field, value, key);
        if (section != "rf_main")
            apply_rf(cfg.rf_eve, field, value, key);
        return;
    }
    if (is_uowc_section(section)) {
        if (section != "uowc_eve")
            apply_uowc(cfg.uowc_main, field, value, key);
        if (section != "uowc_main")
            apply_uowc(cfg.uowc_eve, field, value, key);
        return;
    }
    throw ConfigError("unknown configuration key '" + key + "'");
}

void apply_setting(ScenarioConfig& cfg, const std::string& key, double value)
{
    apply_setting(cfg, key, fmt17(value));
}

ScenarioConfig resolve(const ConfigDoc& doc, const ResolveOptions& opts)
{
    std::vector<std::pair<std::string, std::string>> items;
    for (const auto& [k, v] : doc.entries()) {
        if (k.rfind("sweep.", 0) == 0 || k.rfind("mc.", 0) == 0)
            continue;
        const auto [section, field] = split_key(k);
        if (field == "gbar" && doc.has(section + ".gbar_db"))
            throw ConfigError("both '" + k + "' and '" + section + ".gbar_db' are set");
        items.emplace_back(k, v);
    }
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& x, const auto& y) { return rank(x.first) < rank(y.first); });

    std::optional<TurbulenceRegistry> registry;
    ScenarioConfig cfg;
    for (const auto& [k, v] : items) {
        const auto [section, field] = split_key(k);
        if (field != "turbulence") {
            apply_setting(cfg, k, v);
            continue;
        }
        if (!is_uowc_section(section))
            throw ConfigError("unknown configuration key '" + k + "'");
        if (!registry)
            registry = load_turbulence_registry(opts.registry_path.empty() ? default_registry_path()
                                                                          : opts.registry_path);
        const auto it = registry->find(v);
        if (it == registry->end())
            throw ConfigError(k + ": no turbulence entry named '" + v + "' in the registry");
        for (UowcLinkParams* link : {&cfg.uowc_main, &cfg.uowc_eve}) {
            if ((section == "uowc_main" && link != &cfg.uowc_main) || (section == "uowc_eve" && link != &cfg.uowc_eve))
                continue;
            set_turbulence(link->hop1, it->second.hop1);
            set_turbulence(link->hop2, it->second.hop2);
        }
    }
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return cfg;
}

std::string canonical_text(const ScenarioConfig& cfg)
{
    std::ostringstream os;
    os << "scenario=" << scenario_name(cfg.scenario) << '\n' << "Rs=" << fmt17(cfg.Rs) << '\n';
    auto rf = [&](const char* name, const RfLinkParams& p) {
        os << name << ".kappa=" << fmt17(p.kappa) << '\n'
           << name << ".mu=" << fmt17(p.mu) << '\n'
           << name << ".alpha=" << fmt17(p.alpha) << '\n'
           << name << ".D=" << fmt17(p.D) << '\n'
           << name << ".L=" << p.L << '\n'
           << name << ".varrho=" << fmt17(p.varrho) << '\n'
           << name << ".gbar=" << fmt17(p.gbar) << '\n'
           << name << ".bessel_p=" << p.bessel_p << '\n';
    };
    auto hop = [&](const std::string& name, const MeggParams& h) {
        os << name << ".w=" << fmt17(h.w) << '\n'
           << name << ".lambda=" << fmt17(h.lambda) << '\n'
           << name << ".a=" << fmt17(h.a) << '\n'
           << name << ".b=" << fmt17(h.b) << '\n'
           << name << ".c=" << fmt17(h.c) << '\n'
           << name << ".xi=" << fmt17(h.xi) << '\n'
           << name << ".J=" << fmt17(h.J) << '\n';
    };
    auto uowc = [&](const std::string& name, const UowcLinkParams& p) {
        os << name << ".N=" << p.N << '\n'
           << name << ".r=" << (p.r == Detection::HD ? "HD" : "IMDD") << '\n'
           << name << ".gbar=" << fmt17(p.gbar) << '\n';
        hop(name + ".hop1", p.hop1);
        hop(name + ".hop2", p.hop2);
    };
    rf("rf_main", cfg.rf_main);
    rf("rf_eve", cfg.rf_eve);
    uowc("uowc_main", cfg.uowc_main);
    uowc("uowc_eve", cfg.uowc_eve);
    return os.str();
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string config_hash(const ScenarioConfig& cfg) { return hex64(fnv1a64(canonical_text(cfg))); }

} // namespace uwsec::cli
