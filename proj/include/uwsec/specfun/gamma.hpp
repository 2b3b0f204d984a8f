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

#ifndef UWSEC_SPECFUN_GAMMA_HPP
#define UWSEC_SPECFUN_GAMMA_HPP

#include <complex>

namespace uwsec::specfun {

// ln|Gamma(x)| together with the sign of Gamma(x).
// pole is set (and log_abs = +inf) only when requested via allow_poles.
struct SignedLog {
    double log_abs = 0.0;
    int sign = 1;
    bool pole = false;
};

bool is_nonpositive_integer(double x);

// ln|Gamma(x)|. Throws PoleError at 0, -1, -2, ...
double ln_gamma(double x);
SignedLog ln_gamma_signed(double x, bool allow_poles = false);

double gamma(double x);

// 1/Gamma(x); exactly zero at the poles of Gamma.
double rgamma(double x);

// Complex log-gamma. The imaginary part is only defined modulo 2*pi,
// which is all that exp() of sums of these values needs.
std::complex<double> ln_gamma(std::complex<double> z);

// Regularized incomplete gamma functions P(s,x) and Q(s,x) = 1 - P(s,x).
double gamma_p(double s, double x);
double gamma_q(double s, double x);

// ln P(s,x), accurate when P underflows.
double ln_gamma_p(double s, double x);

// Unregularized lower and upper incomplete gamma.
double lower_incomplete_gamma(double s, double x);
double upper_incomplete_gamma(double s, double x);

} // namespace uwsec::specfun

#endif
