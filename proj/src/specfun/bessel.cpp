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

#include "uwsec/specfun/bessel.hpp"

#include "uwsec/errors.hpp"
#include "uwsec/specfun/gamma.hpp"

#include <cmath>
#include <limits>

namespace uwsec::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxLog = 709.78;

void check_args(double v, double x)
{
    if (!(v >= -1.0))
        throw DomainError("bessel_i: order must be >= -1");
    if (!(x >= 0.0))
        throw DomainError("bessel_i: argument must be >= 0");
}

double log_term(double v, double half_x_log, int k)
{
    return (v + 2.0 * k) * half_x_log - ln_gamma(k + 1.0) - ln_gamma(v + k + 1.0);
}

// ln of sum_k f(k) t_k, where t_k are the power-series terms of I_v(x) and
// f(k) in [0,1] multiplies each term. The terms are summed outward from the
// largest one so the ratio recurrences never overflow.
template <typename Weight>
double log_series(double v, double x, int k_max, Weight weight)
{
    const double hx = 0.5 * x;
    const double hx2 = hx * hx;
    const double lhx = std::log(hx);
    const double disc = std::sqrt(v * v + x * x);
    int k0 = static_cast<int>(std::floor(0.5 * (disc - v - 2.0))) + 1;
    if (k0 < 0)
        k0 = 0;
    if (k0 > k_max)
        k0 = k_max;
    if (v + k0 + 1.0 <= 0.0)
        k0 = 1;

    const double log_peak = log_term(v, lhx, k0);
    double sum = weight(k0);

    double t = 1.0;
    for (int k = k0; k < k_max; ++k) {
        t *= hx2 / ((k + 1.0) * (v + k + 1.0));
        const double w = weight(k + 1);
        sum += w * t;
        if (t < kEps * 1e-2 * sum || w == 0.0)
            break;
    }
    t = 1.0;
    for (int k = k0; k > 0; --k) {
        if (v + k <= 0.0)
            break;
        t *= (k * (v + k)) / hx2;
        sum += weight(k - 1) * t;
        if (t < kEps * 1e-2 * sum)
            break;
    }
    return log_peak + std::log(sum);
}

} // namespace

double log_bessel_i(double v, double x)
{
    check_args(v, x);
    if (v == -1.0)
        v = 1.0;
    if (x == 0.0) {
        if (v == 0.0)
            return 0.0;
        if (v > 0.0)
            return -std::numeric_limits<double>::infinity();
        throw OverflowError("bessel_i: I_v(0) is infinite for -1 < v < 0",
                            std::numeric_limits<double>::infinity());
    }
    return log_series(v, x, std::numeric_limits<int>::max() - 1, [](int) { return 1.0; });
}

double bessel_i(double v, double x)
{
    const double l = log_bessel_i(v, x);
    if (l > kMaxLog)
        throw OverflowError("bessel_i: result overflows double", l);
    return std::exp(l);
}

double bessel_i_scaled(double v, double x)
{
    return std::exp(log_bessel_i(v, x) - x);
}

double bessel_truncation_factor(int k, long p)
{
    if (k > p)
        return 0.0;
    const double pp = static_cast<double>(p) * static_cast<double>(p);
    double r = 1.0;
    for (int j = 1; j < k; ++j)
        r *= 1.0 - static_cast<double>(j) * j / pp;
    return r;
}

double bessel_i_truncated(double v, double x, long p)
{
    if (p < 1)
        throw DomainError("bessel_i_truncated: p must be >= 1");
    if (!(v > -1.0))
        throw DomainError("bessel_i_truncated: order must be > -1");
    if (!(x >= 0.0))
        throw DomainError("bessel_i_truncated: argument must be >= 0");
    if (x == 0.0)
        return v == 0.0 ? 1.0 : 0.0;
    const int k_max = p > 1000000 ? 1000000 : static_cast<int>(p);
    return std::exp(log_series(v, x, k_max, [p](int k) { return bessel_truncation_factor(k, p); }));
}

} // namespace uwsec::specfun
