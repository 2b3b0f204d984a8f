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

#ifndef UWSEC_SPECFUN_BESSEL_HPP
#define UWSEC_SPECFUN_BESSEL_HPP

namespace uwsec::specfun {

// ln I_v(x) for v >= -1, x > 0.
double log_bessel_i(double v, double x);

// Modified Bessel function of the first kind. Throws OverflowError
// (carrying ln I_v(x)) when the value is not representable.
double bessel_i(double v, double x);

// exp(-x) I_v(x).
double bessel_i_scaled(double v, double x);

// Ratio of the truncated-series coefficient V(k,p,v) to the exact
// series coefficient 1/(k! Gamma(v+k+1)):
//   Gamma(p+k) p^(1-2k) / Gamma(p-k+1) = prod_{j=1}^{k-1} (1 - j^2/p^2).
// Zero for k > p.
double bessel_truncation_factor(int k, long p);

// sum_{k=0}^{p} V(k,p,v) (x/2)^(v+2k).
double bessel_i_truncated(double v, double x, long p);

} // namespace uwsec::specfun

#endif
