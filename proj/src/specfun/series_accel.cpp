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

#include "uwsec/specfun/series_accel.hpp"

#include "uwsec/errors.hpp"

#include <cmath>
#include <vector>

namespace uwsec::specfun {

SeriesResult sum_series(const std::function<double(int)>& term, int z_first, int z_max,
                        Acceleration accel, double rel_tol, double abs_tol)
{
    if (z_max < z_first)
        throw DomainError("sum_series: empty range");

    SeriesResult out;
    double partial = 0.0;
    double previous = 0.0;
    int settled = 0;

    // Euler: anti-diagonal of the repeated-averaging table of partial sums.
    std::vector<double> diag;
    // Cesaro: running sum of partial sums.
    double cesaro_acc = 0.0;
    std::vector<double> means;

    for (int z = z_first; z <= z_max; ++z) {
        const double t = term(z);
        if (!std::isfinite(t))
            break;
        partial += t;
        const int n = z - z_first;

        double estimate = partial;
        double tail = std::abs(t);
        switch (accel) {
        case Acceleration::none:
            break;
        case Acceleration::euler: {
            double carry = partial;
            for (double& d : diag) {
                const double avg = 0.5 * (d + carry);
                d = carry;
                carry = avg;
            }
            diag.push_back(carry);
            estimate = carry;
            tail = n == 0 ? std::abs(t) : std::abs(estimate - previous);
            break;
        }
        case Acceleration::cesaro:
            cesaro_acc += partial;
            estimate = cesaro_acc / (n + 1);
            means.push_back(estimate);
            // The (C,1) error decays like 1/n, so the drift since index n/2 is
            // of the same size as the remaining error.
            tail = n < 4 ? std::abs(t) : std::abs(estimate - means[n / 2]);
            break;
        }

        out.value = estimate;
        out.tail_estimate = tail;
        out.terms_used = n + 1;
        if (n > 0 && tail <= std::max(abs_tol, rel_tol * std::abs(estimate))) {
            if (++settled >= 2) {
                out.converged = true;
                return out;
            }
        } else {
            settled = 0;
        }
        previous = estimate;
    }
    return out;
}

} // namespace uwsec::specfun
