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

#include "uwsec/errors.hpp"
#include "uwsec/specfun/meijer_g.hpp"
#include "uwsec/specfun/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace uwsec::specfun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

void validate_panel(const MeijerGSpec& s, const char* name)
{
    if (s.m < 0 || s.n < 0 || s.m > s.q() || s.n > s.p())
        throw SpecError(std::string("bivariate_meijer_g: invalid orders in ") + name + " panel: " + s.describe());
    if (s.m + s.n > 0)
        s.check_existence();
}

struct Strip {
    double lo, hi;
};

Strip strip_of(const MeijerGSpec& s)
{
    Strip st{-kInf, kInf};
    for (int j = 0; j < s.n; ++j)
        st.lo = std::max(st.lo, s.a[j] - 1.0);
    for (int j = 0; j < s.m; ++j)
        st.hi = std::min(st.hi, s.b[j]);
    return st;
}

double margin_in(const Strip& st, double c)
{
    return std::min(c - st.lo, st.hi - c);
}

double decay_rate(const MeijerGSpec& s)
{
    return s.m + s.n - 0.5 * (s.p() + s.q());
}

} // namespace

void BivariateGSpec::validate() const
{
    validate_panel(outer, "outer");
    validate_panel(inner1, "first inner");
    validate_panel(inner2, "second inner");
}

GResult bivariate_meijer_g_eval(const BivariateGSpec& spec, double x, double y, const EvalOptions& o)
{
    spec.validate();
    if (!(x > 0.0) || !(y > 0.0))
        throw DomainError("bivariate_meijer_g: arguments must be > 0");

    const double lx = std::log(x), ly = std::log(y);
    const Strip s0 = strip_of(spec.outer), s1 = strip_of(spec.inner1), s2 = strip_of(spec.inner2);

    auto log_kernel = [&](std::complex<double> u, std::complex<double> v) {
        return meijer_log_kernel(spec.outer, u + v) + meijer_log_kernel(spec.inner1, u)
            + meijer_log_kernel(spec.inner2, v) + u * lx + v * ly;
    };

    // Abscissae (c1, c2): feasible for all three strips, with the smallest
    // integrand magnitude among points keeping a reasonable margin.
    auto clamp_range = [](const Strip& st) {
        double lo = st.lo, hi = st.hi;
        if (std::isinf(lo) && std::isinf(hi)) {
            lo = -10.0;
            hi = 10.0;
        } else if (std::isinf(lo)) {
            lo = hi - 12.0;
        } else if (std::isinf(hi)) {
            hi = lo + 12.0;
        }
        return Strip{lo, hi};
    };
    const Strip r1 = clamp_range(s1), r2 = clamp_range(s2);
    constexpr int grid = 60;
    const double want = std::min(0.2, 0.25 * std::min({s0.hi - s0.lo, s1.hi - s1.lo, s2.hi - s2.lo}));
    double best = kInf, c1 = kInf, c2 = kInf;
    double widest = 0.0, w1 = kInf, w2 = kInf;
    for (int i = 1; i < grid; ++i) {
        const double u = r1.lo + (r1.hi - r1.lo) * i / grid;
        for (int j = 1; j < grid; ++j) {
            const double v = r2.lo + (r2.hi - r2.lo) * j / grid;
            const double margin = std::min({margin_in(s0, u + v), margin_in(s1, u), margin_in(s2, v)});
            if (!(margin > 0.0))
                continue;
            if (margin > widest) {
                widest = margin;
                w1 = u;
                w2 = v;
            }
            if (margin < want)
                continue;
            const double val = log_kernel({u, 0.5}, {v, 0.5}).real();
            if (val < best) {
                best = val;
                c1 = u;
                c2 = v;
            }
        }
    }
    if (std::isinf(c1) && !std::isinf(w1)) {
        c1 = w1;
        c2 = w2;
        best = log_kernel({c1, 0.5}, {c2, 0.5}).real();
    }
    if (std::isinf(c1))
        throw SpecError("bivariate_meijer_g: no pair of vertical contours separates the pole sets");

    const double g0 = best;
    auto magnitude = [&](double t1, double t2) {
        const double l = log_kernel({c1, t1}, {c2, t2}).real() - g0;
        return l < -745.0 ? 0.0 : std::exp(l);
    };
    const double delta = std::min({decay_rate(spec.outer) > 0 ? decay_rate(spec.outer) : 1.0,
                                   decay_rate(spec.inner1), decay_rate(spec.inner2)});
    if (!(delta > 0.0))
        throw SpecError("bivariate_meijer_g: an inner panel kernel does not decay along its contour");

    const double goal = std::max(o.target_rel_tol, 1e-13);
    double e_max = 0.0;
    for (double t1 = 0.0; t1 <= 2.0; t1 += 0.5)
        for (double t2 = -2.0; t2 <= 2.0; t2 += 0.5)
            e_max = std::max(e_max, magnitude(t1, t2));
    double T = 2.0;
    double edge = kInf;
    for (; T < 400.0; T *= 1.4) {
        edge = 0.0;
        for (int k = 0; k <= 32; ++k) {
            const double w = -T + 2.0 * T * k / 32.0;
            edge = std::max({edge, magnitude(T, w), magnitude(std::abs(w), T), magnitude(std::abs(w), -T)});
        }
        e_max = std::max(e_max, edge);
        if (edge * T / (kPi * delta) < 1e-3 * goal * e_max)
            break;
    }

    QuadOptions inner_opts;
    inner_opts.rel_tol = 0.05 * goal;
    inner_opts.abs_tol = 1e-4 * goal * e_max;
    inner_opts.max_intervals = std::max(64, o.contour_resolution / 4);
    inner_opts.initial_panels = std::clamp(static_cast<int>(std::ceil(2.0 * T * (1.0 + std::abs(ly)) / 6.0)), 4, 256);
    bool inner_ok = true;
    int evaluations = 0;
    double inner_err = 0.0;
    int inner_calls = 0;
    auto outer_integrand = [&](double t1) {
        auto f = [&](double t2) {
            const std::complex<double> l = log_kernel({c1, t1}, {c2, t2}) - g0;
            return l.real() < -745.0 ? 0.0 : std::exp(l).real();
        };
        const QuadResult q = integrate(f, -T, T, inner_opts);
        inner_ok = inner_ok && q.converged;
        evaluations += q.evaluations;
        inner_err += q.abs_error;
        ++inner_calls;
        return q.value;
    };
    QuadOptions outer_opts;
    outer_opts.rel_tol = 0.1 * goal;
    outer_opts.abs_tol = 1e-4 * goal * e_max;
    outer_opts.max_intervals = std::max(64, o.contour_resolution / 4);
    outer_opts.initial_panels = std::clamp(static_cast<int>(std::ceil(T * (1.0 + std::abs(lx)) / 6.0)), 4, 128);
    const QuadResult outer = integrate(outer_integrand, 0.0, T, outer_opts);

    const double scale = std::exp(g0) / (2.0 * kPi * kPi);
    GResult r;
    r.backend_used = GBackend::contour;
    r.value = scale * outer.value;
    const double mean_inner_err = inner_calls > 0 ? inner_err / inner_calls : 0.0;
    r.abs_error = scale * (outer.abs_error + mean_inner_err * T + e_max * 1e-3 * goal);
    r.terms = evaluations;
    r.converged = inner_ok && outer.converged && r.abs_error <= o.target_rel_tol * std::abs(r.value);
    return r;
}

double bivariate_meijer_g(const BivariateGSpec& spec, double x, double y, const EvalOptions& o)
{
    const GResult r = bivariate_meijer_g_eval(spec, x, y, o);
    if (!r.converged) {
        std::ostringstream os;
        os << "bivariate_meijer_g: tolerance not reached (achieved rel. error " << r.rel_error()
           << ", " << r.terms << " kernel evaluations)";
        throw NonConvergence(os.str(), r.value, r.abs_error);
    }
    return r.value;
}

BivariateGSpec triple_product_spec(const MeijerGSpec& g1, double alpha, const MeijerGSpec& g2,
                                   const MeijerGSpec& g3)
{
    BivariateGSpec out;
    out.outer.m = g1.n;
    out.outer.n = g1.m;
    for (double v : g1.b)
        out.outer.a.push_back(1.0 - alpha - v);
    for (double v : g1.a)
        out.outer.b.push_back(1.0 - alpha - v);
    out.inner1 = g2;
    out.inner2 = g3;
    return out;
}

} // namespace uwsec::specfun
