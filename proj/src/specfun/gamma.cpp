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

#include "uwsec/specfun/gamma.hpp"

#include "uwsec/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace uwsec::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Stirling coefficients B_{2k} / (2k (2k-1)).
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
};

std::complex<double> stirling(std::complex<double> z)
{
    const std::complex<double> zinv = 1.0 / z;
    const std::complex<double> z2inv = zinv * zinv;
    std::complex<double> series = 0.0;
    for (int k = std::size(kStirling) - 1; k >= 0; --k)
        series = series * z2inv + kStirling[k];
    series *= zinv;
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

std::complex<double> log_sin_pi(std::complex<double> z)
{
    const double y = z.imag();
    const std::complex<double> i(0.0, 1.0);
    if (std::abs(y) < 20.0)
        return std::log(std::sin(kPi * z));
    if (y > 0.0)
        return -i * kPi * z + std::log(std::exp(2.0 * kPi * i * z) - 1.0) - std::log(2.0 * i);
    return i * kPi * z + std::log(1.0 - std::exp(-2.0 * kPi * i * z)) - std::log(2.0 * i);
}

// Series for P(s,x) without the prefactor x^s e^-x / Gamma(s+1).
double p_series_sum(double s, double x)
{
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 100000; ++n) {
        term *= x / (s + n);
        sum += term;
        if (term < sum * kEps)
            return sum;
    }
    throw NonConvergence("gamma_p: series did not converge", sum, term);
}

// Continued fraction for Q(s,x) without the prefactor x^s e^-x / Gamma(s) (modified Lentz).
double q_continued_fraction(double s, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return h;
    }
    throw NonConvergence("gamma_q: continued fraction did not converge", h, 0.0);
}

void check_incomplete_args(double s, double x)
{
    if (!(s > 0.0))
        throw DomainError("incomplete gamma: s must be > 0");
    if (!(x >= 0.0))
        throw DomainError("incomplete gamma: x must be >= 0");
}

} // namespace

bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && x == std::floor(x);
}

SignedLog ln_gamma_signed(double x, bool allow_poles)
{
    if (std::isnan(x))
        throw DomainError("ln_gamma: NaN argument");
    if (is_nonpositive_integer(x)) {
        if (!allow_poles)
            throw PoleError("ln_gamma: pole at nonpositive integer");
        return {kInf, 1, true};
    }
    int sign = 1;
    const double v = lgamma_r(x, &sign);
    return {v, sign, false};
}

double ln_gamma(double x)
{
    return ln_gamma_signed(x).log_abs;
}

double gamma(double x)
{
    const SignedLog g = ln_gamma_signed(x);
    return g.sign * std::exp(g.log_abs);
}

double rgamma(double x)
{
    if (is_nonpositive_integer(x))
        return 0.0;
    const SignedLog g = ln_gamma_signed(x);
    return g.sign * std::exp(-g.log_abs);
}

std::complex<double> ln_gamma(std::complex<double> z)
{
    if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
        throw PoleError("ln_gamma: pole at nonpositive integer");
    if (z.real() < -10.0)
        return std::log(kPi) - log_sin_pi(z) - ln_gamma(1.0 - z);

    std::complex<double> shift = 0.0;
    std::complex<double> prod = 1.0;
    while (z.real() < 15.0) {
        prod *= z;
        if (std::abs(prod) > 1e200) {
            shift += std::log(prod);
            prod = 1.0;
        }
        z += 1.0;
    }
    shift += std::log(prod);
    return stirling(z) - shift;
}

double gamma_p(double s, double x)
{
    check_incomplete_args(s, x);
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < s + 1.0)
        return std::exp(ln_gamma_p(s, x));
    return 1.0 - gamma_q(s, x);
}

double gamma_q(double s, double x)
{
    check_incomplete_args(s, x);
    if (x == 0.0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    if (x < s + 1.0)
        return 1.0 - gamma_p(s, x);
    const double log_pre = s * std::log(x) - x - ln_gamma(s);
    return std::exp(log_pre) * q_continued_fraction(s, x);
}

double ln_gamma_p(double s, double x)
{
    check_incomplete_args(s, x);
    if (x == 0.0)
        return -kInf;
    if (std::isinf(x))
        return 0.0;
    if (x < s + 1.0)
        return s * std::log(x) - x - ln_gamma(s + 1.0) + std::log(p_series_sum(s, x));
    return std::log1p(-gamma_q(s, x));
}

double lower_incomplete_gamma(double s, double x)
{
    check_incomplete_args(s, x);
    if (x == 0.0)
        return 0.0;
    return std::exp(ln_gamma_p(s, x) + ln_gamma(s));
}

double upper_incomplete_gamma(double s, double x)
{
    check_incomplete_args(s, x);
    return gamma_q(s, x) * gamma(s);
}

} // namespace uwsec::specfun
