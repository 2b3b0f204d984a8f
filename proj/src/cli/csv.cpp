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

#include "uwsec/cli/csv.hpp"

#include "uwsec/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#ifndef UWSEC_VERSION
#define UWSEC_VERSION "0.1.0"
#endif

namespace uwsec::cli {

namespace {

std::string axis_unit(const MetricCurve& c)
{
    if (c.axis.snr)
        return c.spec.range.scale == AxisScale::dB ? "dB" : "linear";
    if (c.axis.keys.size() == 1 && c.axis.keys[0] == "Rs")
        return "bit/s/Hz";
    return "-";
}

std::string metric_unit(Metric m, AscUnits u)
{
    switch (m) {
    case Metric::SOP:
    case Metric::SPSC:
        return "prob";
    case Metric::EST:
        return "bit/s/Hz";
    case Metric::ASC:
        return u == AscUnits::bits ? "bits" : "nats";
    }
    return "-";
}

std::string join(const std::vector<std::string>& v, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? sep : "") + v[i];
    return out;
}

} // namespace

const char* version() { return UWSEC_VERSION; }

AscUnits parse_asc_units(const std::string& name)
{
    if (name == "nats")
        return AscUnits::nats;
    if (name == "bits")
        return AscUnits::bits;
    throw ConfigError("unknown ASC unit '" + name + "' (expected nats or bits)");
}

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> csv_header(const MetricCurve& c, AscUnits units)
{
    std::vector<std::string> h{"curve", c.axis.name + " [" + axis_unit(c) + "]"};
    for (Metric m : c.spec.metrics) {
        const std::string u = " [" + metric_unit(m, units) + "]";
        const std::string n = metric_name(m);
        h.push_back(n + "_closed" + u);
        h.push_back(n + "_asym" + u);
        h.push_back(n + "_mc" + u);
        h.push_back(n + "_mc_hw3sigma" + u);
    }
    h.push_back("status");
    return h;
}

void write_csv(std::ostream& os, const std::vector<MetricCurve>& curves, const CsvOptions& opts)
{
    if (curves.empty())
        throw ConfigError("write_csv: no curves");
    const MetricCurve& first = curves.front();
    for (const auto& c : curves)
        if (c.axis.name != first.axis.name || c.spec.metrics != first.spec.metrics
            || c.spec.range.scale != first.spec.range.scale)
            throw ConfigError("write_csv: curves in one file must share axis and metrics");

    os << "# uwsec " << version() << '\n';
    for (const auto& m : opts.metadata)
        os << "# " << m << '\n';
    os << "# axis " << first.axis.name << " -> " << join(first.axis.keys, ",") << " ("
       << scale_name(first.spec.range.scale) << ")\n";
    os << "# mc_samples " << first.spec.mc_samples << " seed " << first.spec.seed << '\n';
    os << "# asc_units " << (opts.asc_units == AscUnits::bits ? "bits" : "nats") << '\n';
    std::string all_hashes;
    for (const auto& c : curves) {
        os << "# curve " << c.label << " config_hash " << c.config_hash << '\n';
        all_hashes += c.config_hash;
    }
    os << "# config_hash " << hex64(fnv1a64(all_hashes)) << '\n';

    const auto header = csv_header(first, opts.asc_units);
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << csv_field(header[i]);
    os << '\n';

    const bool with_mc = first.spec.mc_samples > 0;
    const double asc_scale = opts.asc_units == AscUnits::bits ? 1.0 / std::numbers::ln2 : 1.0;
    for (const auto& c : curves) {
        for (std::size_t p = 0; p < c.axis_values.size(); ++p) {
            os << csv_field(c.label) << ',' << format_number(c.axis_values[p]);
            for (std::size_t j = 0; j < c.spec.metrics.size(); ++j) {
                const MetricCell& cell = c.cells[p][j];
                const bool asc = c.spec.metrics[j] == Metric::ASC;
                const double s = asc ? asc_scale : 1.0;
                os << ',' << format_number(cell.closed * s);
                os << ',' << (asc ? std::string() : format_number(cell.asym));
                if (with_mc)
                    os << ',' << format_number(cell.mc * s) << ',' << format_number(cell.mc_hw * s);
                else
                    os << ",,";
            }
            os << ',' << csv_field(c.status[p]) << '\n';
        }
    }
}

} // namespace uwsec::cli
