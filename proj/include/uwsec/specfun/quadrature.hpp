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

#ifndef UWSEC_SPECFUN_QUADRATURE_HPP
#define UWSEC_SPECFUN_QUADRATURE_HPP

#include <functional>

namespace uwsec::specfun {

struct QuadOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_intervals = 2000;
    // The range is split into this many equal panels before adapting, so
    // narrow features inside a long interval are not missed.
    int initial_panels = 1;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Globally adaptive 15-point Gauss-Kronrod on [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {});

// Integral over [a, inf) through the map x = a + t/(1-t).
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 const QuadOptions& opts = {});

// Integral over (0, inf) of f(x) dx through x = exp(u), u in [u_lo, u_hi].
// The caller chooses a u-range outside which the integrand is negligible.
QuadResult integrate_log_axis(const std::function<double(double)>& f, double u_lo, double u_hi,
                              const QuadOptions& opts = {});

} // namespace uwsec::specfun

#endif
