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

#include "meijer_g_internal.hpp"
#include "uwsec/errors.hpp"
#include "uwsec/specfun/gamma.hpp"
#include "uwsec/specfun/meijer_g.hpp"

#include <algorithm>
#include <cmath>

namespace uwsec::specfun {

namespace {

// k-th residue term of the lower pole family s = b_h + k, from its gamma factors.
double residue_term(const MeijerGSpec& s, double log_x, int h, int k)
{
    const double bh = s.b[h];
    double log_abs = (bh + k) * log_x - ln_gamma(k + 1.0);
    int sign = (k % 2) ? -1 : 1;
    auto mul = [&](double y) {
        const SignedLog g = ln_gamma_signed(y);
        log_abs += g.log_abs;
        sign *= g.sign;
    };
    for (int j = 0; j < s.m; ++j)
        if (j != h)
            mul(s.b[j] - bh - k);
    for (int j = 0; j < s.n; ++j)
        mul(1.0 - s.a[j] + bh + k);
    for (int j = s.m; j < s.q(); ++j) {
        const double y = 1.0 - s.b[j] + bh + k;
        if (is_nonpositive_integer(y))
            return 0.0;
        const SignedLog g = ln_gamma_signed(y);
        log_abs -= g.log_abs;
        sign *= g.sign;
    }
    for (int j = s.n; j < s.p(); ++j) {
        const double y = s.a[j] - bh - k;
        if (is_nonpositive_integer(y))
            return 0.0;
        const SignedLog g = ln_gamma_signed(y);
        log_abs -= g.log_abs;
        sign *= g.sign;
    }
    return sign * std::exp(log_abs);
}

// Sum over lower families of the terms with pole location <= limit (at least k = 0).
double leading_sum(const MeijerGSpec& s, double log_x, double limit)
{
    double acc = 0.0;
    for (int h = 0; h < s.m; ++h)
        for (int k = 0; k == 0 || s.b[h] + k <= limit; ++k)
            acc += residue_term(s, log_x, h, k);
    return acc;
}

} // namespace

double meijer_g_small_x_leading(const MeijerGSpec& spec, double x, const EvalOptions& opts)
{
    spec.validate();
    if (!(x > 0.0))
        throw DomainError("meijer_g_small_x_leading: argument must be > 0");
    spec.check_existence();
    const double log_x = std::log(x);
    const auto groups = detail::coincident_groups(spec.b, spec.m, 1e-6);
    if (groups.empty())
        return leading_sum(spec, log_x, -1e300);

    // Members of a coincident group must be expanded up to the group's last
    // pole so that the split 1/delta parts cancel.
    double limit = -1e300;
    std::size_t widest = 0;
    for (const auto& g : groups) {
        widest = std::max(widest, g.size());
        for (int idx : g)
            limit = std::max(limit, spec.b[idx]);
    }
    const double d = opts.perturbation;
    limit += 2.5 * std::abs(d) * static_cast<double>(widest) + 1e-6;
    auto symmetric = [&](double dd) {
        return 0.5 * (leading_sum(detail::split_coincident(spec, groups, dd), log_x, limit)
                      + leading_sum(detail::split_coincident(spec, groups, -dd), log_x, limit));
    };
    return (4.0 * symmetric(d) - symmetric(2.0 * d)) / 3.0;
}

double meijer_g_large_x_leading(const MeijerGSpec& spec, double x, const EvalOptions& opts)
{
    spec.validate();
    if (!(x > 0.0))
        throw DomainError("meijer_g_large_x_leading: argument must be > 0");
    const MeijerGSpec inv = inverted(spec);
    if (inv.m == 0)
        return 0.0;
    return meijer_g_small_x_leading(inv, 1.0 / x, opts);
}

} // namespace uwsec::specfun
