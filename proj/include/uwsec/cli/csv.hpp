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

// Plot-ready CSV output. Metadata goes into leading '#' lines; run time is
// deliberately left out so that a fixed seed reproduces the file byte for byte.

#ifndef UWSEC_CLI_CSV_HPP
#define UWSEC_CLI_CSV_HPP

#include "uwsec/cli/sweep.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace uwsec::cli {

const char* version();

enum class AscUnits { nats, bits };

AscUnits parse_asc_units(const std::string& name);

struct CsvOptions {
    AscUnits asc_units = AscUnits::nats;
    // Extra metadata, one comment line each.
    std::vector<std::string> metadata;
};

// %.10g; NaN prints as "nan".
std::string format_number(double v);
// Quotes fields containing commas, quotes or line breaks.
std::string csv_field(const std::string& s);

// Column names with units, e.g. "SOP_closed [prob]".
std::vector<std::string> csv_header(const MetricCurve& curve, AscUnits units);

// All curves must share the axis and metric list; rows are prefixed with the
// curve label.
void write_csv(std::ostream& os, const std::vector<MetricCurve>& curves, const CsvOptions& opts = {});

} // namespace uwsec::cli

#endif
