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

#ifndef UWSEC_SPECFUN_SERIES_ACCEL_HPP
#define UWSEC_SPECFUN_SERIES_ACCEL_HPP

#include <functional>

namespace uwsec::specfun {

enum class Acceleration { none, euler, cesaro };

struct SeriesResult {
    double value = 0.0;
    // Estimated distance of value from the limit (Cauchy-type tail).
    double tail_estimate = 0.0;
    int terms_used = 0;
    bool converged = false;
};

// Sums term(z) for z = z_first, ..., z_max with the chosen summation method.
// Convergence is declared when the tail estimate stays below
// rel_tol * |value| (or abs_tol) for two consecutive partial sums.
SeriesResult sum_series(const std::function<double(int)>& term, int z_first, int z_max,
                        Acceleration accel, double rel_tol, double abs_tol = 0.0);

} // namespace uwsec::specfun

#endif
