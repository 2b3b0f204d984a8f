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

#include "uwsec/specfun/meijer_g.hpp"

#include "meijer_g_internal.hpp"
#include "uwsec/errors.hpp"
#include "uwsec/specfun/gamma.hpp"
#include "uwsec/specfun/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <math.h>

#if UWSEC_HAVE_QUADMATH
#include <quadmath.h>
#endif
#include <limits>
#include <numbers>
#include <sstream>

namespace uwsec::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;
constexpr double kCoincidenceTol = 1e-6;

// Running product of gamma values kept as (log magnitude, sign).
struct LogProduct {
    double log_abs = 0.0;
    int sign = 1;
    bool zero = false;
    // Sum of |ln Gamma| magnitudes, a proxy for accumulated rounding.
    double magnitude = 0.0;

    void mul_gamma(double y)
    {
        const SignedLog g = ln_gamma_signed(y);
        log_abs += g.log_abs;
        sign *= g.sign;
        magnitude += std::abs(g.log_abs);
    }
    void div_gamma(double y)
    {
        if (is_nonpositive_integer(y)) {
            zero = true;
            return;
        }
        const SignedLog g = ln_gamma_signed(y);
        log_abs -= g.log_abs;
        sign *= g.sign;
        magnitude += std::abs(g.log_abs);
    }
};

// Extended-precision arithmetic for the residue series. The alternating
// series can cancel by many orders of magnitude at large x, and pole
// families can cancel each other, so the leading factor, the recurrence and
// the family total run in long double, with a quad-precision retry where
// available.
inline long double x_exp(long double v) { return expl(v); }
inline long double x_log(long double v) { return logl(v); }
inline long double x_abs(long double v) { return fabsl(v); }
inline long double x_lgamma(long double y, int& sign) { return lgammal_r(y, &sign); }
template <class T> constexpr double x_eps();
template <> constexpr double x_eps<long double>() { return static_cast<double>(LDBL_EPSILON); }

#if UWSEC_HAVE_QUADMATH
using quad = __float128;
inline quad x_exp(quad v) { return expq(v); }
inline quad x_log(quad v) { return logq(v); }
inline quad x_abs(quad v) { return fabsq(v); }
inline quad x_lgamma(quad y, int& sign)
{
    // Gamma is negative on (-1, 0), (-3, -2), ...
    sign = (y > 0 || static_cast<long long>(floorq(y)) % 2 == 0) ? 1 : -1;
    return lgammaq(y);
}
template <> constexpr double x_eps<quad>() { return 1.92592994438723585305597794258492732e-34; }
#endif

template <class T>
struct SeriesSum {
    T value = 0;
    double abs_error = 0.0;
    // Part of abs_error caused by rounding rather than truncation.
    double rounding = 0.0;
    int terms = 0;
    bool converged = true;
};

// First k beyond which every Pochhammer factor (c + k) has |c + k| >= 1,
// so the term ratios no longer change character.
int settle_index(const MeijerGSpec& s, double bh, int h)
{
    double worst = 0.0;
    for (double aj : s.a)
        worst = std::max(worst, -(1.0 + bh - aj));
    for (int j = 0; j < s.q(); ++j)
        if (j != h)
            worst = std::max(worst, -(1.0 + bh - s.b[j]));
    return static_cast<int>(std::ceil(worst)) + 2;
}

// Residue series of a single lower pole family s = b_h + k, scaled by the
// leading coefficient. The spec is assumed free of coincident m-group poles.
// A positive abs_goal bounds the truncation error in absolute terms, for
// families that cancel against each other.
template <class T>
SeriesSum<T> pole_family(const MeijerGSpec& s, double x, double log_x, int h, const EvalOptions& o,
                         double abs_goal)
{
    const int p = s.p(), q = s.q(), m = s.m, n = s.n;
    const double bh = s.b[h];
    const double z = ((p - m - n) % 2 != 0) ? -x : x;

    LogProduct lead;
    bool direct = false;
    for (int j = 0; j < m; ++j)
        if (j != h)
            lead.mul_gamma(s.b[j] - bh);
    for (int j = 0; j < n; ++j)
        lead.mul_gamma(1.0 + bh - s.a[j]);
    for (int j = m; j < q; ++j) {
        const double y = 1.0 + bh - s.b[j];
        if (is_nonpositive_integer(y))
            direct = true;
        else
            lead.div_gamma(y);
    }
    for (int j = n; j < p; ++j) {
        const double y = s.a[j] - bh;
        // 1/Gamma(y - k) vanishes for every k once y is a nonpositive integer.
        if (is_nonpositive_integer(y))
            return {};
        lead.div_gamma(y);
    }

    SeriesSum<T> out;
    const int k_settle = settle_index(s, bh, h);
    const double rel_goal = 1e-3 * o.target_rel_tol;

    if (!direct) {
        const double eps = x_eps<T>();
        const T tb = bh;
        T log_c = tb * x_log(static_cast<T>(x));
        int lead_sign = 1;
        auto mul = [&](T y, int power) {
            int sg = 1;
            log_c += power * x_lgamma(y, sg);
            lead_sign *= sg;
        };
        for (int j = 0; j < m; ++j)
            if (j != h)
                mul(static_cast<T>(s.b[j]) - tb, 1);
        for (int j = 0; j < n; ++j)
            mul(1 + tb - static_cast<T>(s.a[j]), 1);
        for (int j = m; j < q; ++j)
            mul(1 + tb - static_cast<T>(s.b[j]), -1);
        for (int j = n; j < p; ++j)
            mul(static_cast<T>(s.a[j]) - tb, -1);

        const T scale = x_exp(log_c);
        const double abs_allowed = abs_goal > 0.0 ? abs_goal / static_cast<double>(scale) : kInf;
        T t = 1, sum = 1, sum_abs = 1;
        int small_run = 0;
        double tail = 0.0;
        int k = 0;
        bool done = false;
        for (; k < o.max_series_terms; ++k) {
            T num = z;
            T den = k + 1;
            for (int j = 0; j < p; ++j)
                num *= 1 + tb - static_cast<T>(s.a[j]) + k;
            for (int j = 0; j < q; ++j)
                if (j != h)
                    den *= 1 + tb - static_cast<T>(s.b[j]) + k;
            const T ratio = num / den;
            t *= ratio;
            sum += t;
            sum_abs += x_abs(t);
            if (t == 0) {
                done = true;
                tail = 0.0;
                break;
            }
            const double r = static_cast<double>(x_abs(ratio));
            if (k >= k_settle && r < 1.0) {
                const double r_eff = (p == q) ? std::max(r, x) : r;
                tail = static_cast<double>(x_abs(t)) * r_eff / (1.0 - r_eff);
                // Full precision is cheap while the series is short.
                const double goal = k < 200 ? kEps : rel_goal;
                const double allowed = std::min(goal * static_cast<double>(x_abs(sum)), abs_allowed);
                if (tail <= std::max(eps * static_cast<double>(sum_abs), allowed)) {
                    if (++small_run >= 2) {
                        done = true;
                        break;
                    }
                } else {
                    small_run = 0;
                }
            }
            if (!std::isfinite(static_cast<double>(sum)))
                break;
        }
        out.value = lead_sign * scale * sum;
        out.terms = k + 1;
        out.converged = done && std::isfinite(static_cast<double>(out.value));
        if (!done)
            tail = static_cast<double>(x_abs(t)) * 10.0;
        const double sc = static_cast<double>(scale);
        const double mag = static_cast<double>(x_abs(out.value));
        out.rounding = sc * 4.0 * eps * static_cast<double>(sum_abs)
            + mag * eps * (4.0 + lead.magnitude + std::abs(bh * log_x));
        out.abs_error = sc * tail + out.rounding;
        return out;
    }

    // Some 1/Gamma(1 + b_h - b_j + k) factor is zero for small k and not
    // afterwards, which the ratio recurrence cannot express; evaluate each
    // term from its gamma factors.
    double sum = 0.0, sum_abs = 0.0, magnitude = 0.0;
    double prev_abs = kInf;
    int small_run = 0;
    int k = 0;
    bool done = false;
    double last = 0.0;
    for (; k < o.max_series_terms; ++k) {
        LogProduct t;
        for (int j = 0; j < m; ++j)
            if (j != h)
                t.mul_gamma(s.b[j] - bh - k);
        for (int j = 0; j < n; ++j)
            t.mul_gamma(1.0 - s.a[j] + bh + k);
        for (int j = m; j < q; ++j)
            t.div_gamma(1.0 - s.b[j] + bh + k);
        for (int j = n; j < p; ++j)
            t.div_gamma(s.a[j] - bh - k);
        double term = 0.0;
        if (!t.zero) {
            const double lt = t.log_abs - ln_gamma(k + 1.0) + (bh + k) * log_x;
            term = ((k % 2) ? -1.0 : 1.0) * t.sign * std::exp(lt);
            magnitude = std::max(magnitude, t.magnitude);
        }
        sum += term;
        sum_abs += std::abs(term);
        last = std::abs(term);
        if (k >= k_settle && term != 0.0) {
            const double r = last / prev_abs;
            if (r < 1.0) {
                const double tail = last * r / (1.0 - r);
                const double goal = k < 200 ? kEps : rel_goal;
                if (tail <= std::max(kEps * sum_abs, goal * std::abs(sum))) {
                    if (++small_run >= 2) {
                        done = true;
                        break;
                    }
                } else {
                    small_run = 0;
                }
            }
        }
        if (term != 0.0)
            prev_abs = last;
    }
    out.value = sum;
    out.terms = k + 1;
    out.converged = done;
    out.rounding = kEps * sum_abs * (8.0 + magnitude);
    out.abs_error = (done ? 0.0 : 10.0 * last) + out.rounding;
    return out;
}

// Residue series of a spec with simple lower poles, valid for p < q or x < 1.
template <class T>
GResult residue_simple_in(const MeijerGSpec& s, double x, const EvalOptions& o, double abs_goal)
{
    GResult r;
    r.backend_used = GBackend::residue;
    const double log_x = std::log(x);
    T total = 0;
    double err = 0.0;
    bool conv = true;
    int terms = 0;
    for (int h = 0; h < s.m; ++h) {
        const SeriesSum<T> f = pole_family<T>(s, x, log_x, h, o, abs_goal);
        total += f.value;
        err += f.abs_error;
        conv = conv && f.converged;
        terms += f.terms;
    }
    r.value = static_cast<double>(total);
    // Rounding of the final conversion.
    err += kEps * std::abs(r.value);
    r.abs_error = std::isfinite(err) ? err : kInf;
    r.terms = terms;
    r.converged = conv && std::isfinite(r.value) && r.abs_error <= o.target_rel_tol * std::abs(r.value);
    if (r.value == 0.0 && err == 0.0)
        r.converged = conv;
    return r;
}

GResult residue_simple(const MeijerGSpec& s, double x, const EvalOptions& o)
{
    GResult r = residue_simple_in<long double>(s, x, o, 0.0);
#if UWSEC_HAVE_QUADMATH
    // Pole families can be many orders of magnitude larger than their sum.
    // Retry in quad precision with the truncation error bounded relative to
    // the current estimate of the total, tightening while the estimate drops.
    double estimate = std::abs(r.value);
    for (int pass = 0; pass < 3 && !r.converged && std::isfinite(estimate) && estimate > 0.0; ++pass) {
        GResult qr = residue_simple_in<quad>(s, x, o, 1e-3 * o.target_rel_tol * estimate);
        qr.terms += r.terms;
        if (!(qr.converged || qr.abs_error < r.abs_error))
            break;
        const bool shrinking = std::abs(qr.value) < 0.5 * estimate;
        r = qr;
        estimate = std::abs(qr.value);
        if (!shrinking)
            break;
    }
#endif
    return r;
}

// Residues at the lower poles computed by contour integration around each
// distinct location; handles multiple poles without closed forms.
GResult residue_numerical(const MeijerGSpec& s, double x, const EvalOptions& o)
{
    GResult r;
    r.backend_used = GBackend::residue;
    r.log_case = true;
    const double log_x = std::log(x);
    double lo = kInf, settle = -kInf;
    for (int j = 0; j < s.m; ++j)
        lo = std::min(lo, s.b[j]);
    for (double v : s.a)
        settle = std::max(settle, v);
    for (double v : s.b)
        settle = std::max(settle, v);
    settle += 2.0;

    double total = 0.0, sum_abs = 0.0;
    int count = 0, quiet = 0;
    bool done = false;
    for (double w = lo; count < o.max_series_terms; w += 1.0) {
        double window_abs = 0.0;
        for (double s0 : detail::lower_pole_locations(s, w - 1e-9, w + 1.0 - 1e-9)) {
            const double d = detail::distance_to_other_poles(s, s0, kCoincidenceTol);
            const double radius = std::min(0.25, 0.3 * d);
            const double v = -detail::circle_residue(s, log_x, s0, radius).real();
            total += v;
            window_abs += std::abs(v);
            ++count;
        }
        sum_abs += window_abs;
        if (w > settle) {
            if (window_abs <= std::max(kEps * sum_abs, 1e-3 * o.target_rel_tol * std::abs(total))) {
                if (++quiet >= 2) {
                    done = true;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
    }
    r.value = total;
    r.abs_error = 1e3 * kEps * sum_abs;
    r.terms = count;
    r.converged = done && r.abs_error <= o.target_rel_tol * std::abs(total);
    return r;
}

GResult residue_route(const MeijerGSpec& spec, double x, const EvalOptions& o)
{
    MeijerGSpec s = spec;
    double xx = x;
    if (spec.p() > spec.q() || (spec.p() == spec.q() && x > 1.0)) {
        s = inverted(spec);
        xx = 1.0 / x;
    }
    GResult bad;
    bad.backend_used = GBackend::residue;
    bad.value = kNaN;
    bad.abs_error = kInf;
    if (s.m == 0 || (s.p() == s.q() && xx >= 1.0))
        return bad;

    const auto groups = detail::coincident_groups(s.b, s.m, kCoincidenceTol);
    if (groups.empty())
        return residue_simple(s, xx, o);

    if (o.log_case_strategy == LogCaseStrategy::log_series)
        return residue_numerical(s, xx, o);

    // Symmetric pairs cancel the odd powers of the perturbation; Richardson
    // extrapolation over (d, 2d) removes the d^2 term.
    auto symmetric = [&](double d, GResult& acc) {
        const GResult plus = residue_simple(detail::split_coincident(s, groups, d), xx, o);
        const GResult minus = residue_simple(detail::split_coincident(s, groups, -d), xx, o);
        acc.terms += plus.terms + minus.terms;
        acc.abs_error += 0.5 * (plus.abs_error + minus.abs_error);
        acc.converged = acc.converged && plus.converged && minus.converged;
        return 0.5 * (plus.value + minus.value);
    };
    GResult r;
    r.backend_used = GBackend::residue;
    r.log_case = true;
    r.converged = true;
    r.abs_error = 0.0;
    const double d = o.perturbation;
    const double a1 = symmetric(d, r);
    const double a2 = symmetric(2.0 * d, r);
    r.value = (4.0 * a1 - a2) / 3.0;
    r.abs_error = (5.0 / 3.0) * r.abs_error + std::abs(a1 - a2) * std::max(d, 1e-6);
    r.converged = r.converged && r.abs_error <= o.target_rel_tol * std::abs(r.value);
    return r;
}

double upper_separator(const MeijerGSpec& s)
{
    double v = -kInf;
    for (int j = 0; j < s.n; ++j)
        v = std::max(v, s.a[j] - 1.0);
    return v;
}

double lower_separator(const MeijerGSpec& s)
{
    double v = kInf;
    for (int j = 0; j < s.m; ++j)
        v = std::min(v, s.b[j]);
    return v;
}

// Contour abscissa: inside the separating strip when it exists, at the
// minimum of |phi(c) x^c| (the saddle of the integrand on the real axis).
double choose_abscissa(const MeijerGSpec& s, double log_x, bool& separated)
{
    const double L = upper_separator(s);
    const double R = lower_separator(s);
    auto g = [&](double c) { return meijer_log_kernel(s, {c, 0.5}).real() + c * log_x; };

    separated = L < R;
    if (!separated) {
        double c = 0.5 * (L + R);
        for (int attempt = 0; attempt < 40; ++attempt) {
            if (detail::distance_to_other_poles(s, c, -1.0) >= 0.2)
                break;
            c += 0.05;
        }
        return c;
    }

    double lo, hi;
    if (std::isinf(L) && std::isinf(R)) {
        lo = -40.0;
        hi = 40.0;
    } else if (std::isinf(L)) {
        hi = R - 0.25;
        lo = hi - 120.0;
    } else if (std::isinf(R)) {
        lo = L + 0.25;
        hi = lo + 120.0;
    } else {
        const double margin = std::min(0.25, 0.25 * (R - L));
        lo = L + margin;
        hi = R - margin;
    }
    constexpr int grid = 48;
    double best_c = 0.5 * (lo + hi);
    double best = kInf;
    for (int i = 0; i <= grid; ++i) {
        const double c = lo + (hi - lo) * i / grid;
        const double v = g(c);
        if (v < best) {
            best = v;
            best_c = c;
        }
    }
    // Golden-section refinement inside the neighbouring grid cells.
    const double step = (hi - lo) / grid;
    double u = std::max(lo, best_c - step);
    double w = std::min(hi, best_c + step);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c1 = w - phi * (w - u), c2 = u + phi * (w - u);
    double g1 = g(c1), g2 = g(c2);
    for (int it = 0; it < 40; ++it) {
        if (g1 < g2) {
            w = c2;
            c2 = c1;
            g2 = g1;
            c1 = w - phi * (w - u);
            g1 = g(c1);
        } else {
            u = c1;
            c1 = c2;
            g1 = g2;
            c2 = u + phi * (w - u);
            g2 = g(c2);
        }
    }
    return 0.5 * (u + w);
}

GResult contour_eval(const MeijerGSpec& s, double x, const EvalOptions& o)
{
    GResult r;
    r.backend_used = GBackend::contour;
    const double delta = s.m + s.n - 0.5 * (s.p() + s.q());
    if (delta <= 0.0) {
        r.value = kNaN;
        r.abs_error = kInf;
        return r;
    }
    const double log_x = std::log(x);
    bool separated = true;
    const double c = choose_abscissa(s, log_x, separated);

    // Residues of poles that sit on the wrong side of the line.
    double correction = 0.0, correction_err = 0.0;
    if (!separated) {
        for (double s0 : detail::lower_pole_locations(s, -kInf, c)) {
            const double radius = std::min(0.25, 0.3 * detail::distance_to_other_poles(s, s0, kCoincidenceTol));
            const double v = detail::circle_residue(s, log_x, s0, radius).real();
            correction -= v;
            correction_err += 1e3 * kEps * std::abs(v);
        }
        for (double s0 : detail::upper_pole_locations(s, c, kInf)) {
            const double radius = std::min(0.25, 0.3 * detail::distance_to_other_poles(s, s0, kCoincidenceTol));
            const double v = detail::circle_residue(s, log_x, s0, radius).real();
            correction += v;
            correction_err += 1e3 * kEps * std::abs(v);
        }
    }

    const double g0 = meijer_log_kernel(s, {c, 0.5}).real() + c * log_x;
    auto log_mag = [&](double tau) {
        return meijer_log_kernel(s, {c, tau}).real() + c * log_x - g0;
    };
    auto integrand = [&](double tau) {
        const std::complex<double> sv(c, tau);
        const std::complex<double> l = meijer_log_kernel(s, sv) + sv * log_x - g0;
        if (l.real() < -745.0)
            return 0.0;
        return std::exp(l).real();
    };

    double e_max = 0.0;
    for (double tau = 0.0; tau <= 2.0; tau += 0.25)
        e_max = std::max(e_max, std::exp(log_mag(tau)));
    const double goal = std::max(o.target_rel_tol, 1e-15);
    double T = 2.0;
    while (T < 1e5) {
        const double e = std::exp(log_mag(T));
        e_max = std::max(e_max, e);
        if (e / (kPi * delta) < 1e-3 * goal * e_max)
            break;
        T *= 1.5;
    }
    const double tail = std::exp(log_mag(T)) / (kPi * delta);

    QuadOptions qo;
    qo.rel_tol = std::max(0.1 * goal, 2e-15);
    qo.abs_tol = 0.0;
    qo.max_intervals = std::max(64, o.contour_resolution);
    const double oscillation = std::abs(log_x) + std::log1p(T) * (s.p() + s.q());
    qo.initial_panels = std::clamp(static_cast<int>(std::ceil(T * (1.0 + oscillation) / 6.0)), 4, qo.max_intervals / 2);
    const QuadResult qr = integrate(integrand, 0.0, T, qo);

    const double scale = std::exp(g0) / kPi;
    r.value = scale * qr.value + correction;
    r.abs_error = scale * (qr.abs_error + tail) + correction_err + 4.0 * kEps * std::abs(r.value);
    r.terms = qr.evaluations;
    r.converged = std::isfinite(r.value) && r.abs_error <= o.target_rel_tol * std::abs(r.value);
    return r;
}

} // namespace

namespace detail {

bool near_integer(double d, double tol)
{
    return std::abs(d - std::round(d)) <= tol;
}

std::vector<std::vector<int>> coincident_groups(const std::vector<double>& b, int m, double tol)
{
    std::vector<int> label(m);
    for (int i = 0; i < m; ++i)
        label[i] = i;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (near_integer(b[i] - b[j], tol)) {
                const int from = label[j], to = label[i];
                for (int k = 0; k < m; ++k)
                    if (label[k] == from)
                        label[k] = to;
            }
    std::vector<std::vector<int>> groups;
    for (int root = 0; root < m; ++root) {
        std::vector<int> g;
        for (int k = 0; k < m; ++k)
            if (label[k] == root)
                g.push_back(k);
        if (g.size() > 1)
            groups.push_back(g);
    }
    return groups;
}

MeijerGSpec split_coincident(const MeijerGSpec& spec, const std::vector<std::vector<int>>& groups,
                             double delta)
{
    MeijerGSpec s = spec;
    for (const auto& g : groups)
        for (std::size_t i = 1; i < g.size(); ++i)
            s.b[g[i]] += delta * static_cast<double>(i);
    return s;
}

std::complex<double> circle_residue(const MeijerGSpec& spec, double log_x, double s0, double r,
                                    int nodes)
{
    std::complex<double> acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double theta = 2.0 * kPi * (j + 0.5) / nodes;
        const std::complex<double> e(std::cos(theta), std::sin(theta));
        const std::complex<double> sv = s0 + r * e;
        acc += std::exp(meijer_log_kernel(spec, sv) + sv * log_x) * e;
    }
    return acc * (r / nodes);
}

namespace {
void add_unique(std::vector<double>& v, double s)
{
    for (double e : v)
        if (std::abs(e - s) <= kCoincidenceTol)
            return;
    v.push_back(s);
}
} // namespace

std::vector<double> lower_pole_locations(const MeijerGSpec& spec, double lo, double hi)
{
    std::vector<double> out;
    for (int j = 0; j < spec.m; ++j) {
        const double bj = spec.b[j];
        const double k0 = std::max(0.0, std::ceil(lo - bj));
        for (double k = k0; bj + k < hi; k += 1.0)
            if (bj + k >= lo)
                add_unique(out, bj + k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> upper_pole_locations(const MeijerGSpec& spec, double lo, double hi)
{
    std::vector<double> out;
    for (int j = 0; j < spec.n; ++j) {
        const double top = spec.a[j] - 1.0;
        const double k0 = std::max(0.0, std::ceil(top - hi));
        for (double k = k0; top - k > lo; k += 1.0)
            if (top - k <= hi)
                add_unique(out, top - k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double distance_to_other_poles(const MeijerGSpec& spec, double s, double same)
{
    double d = kInf;
    auto consider = [&](double pole) {
        const double dist = std::abs(pole - s);
        if (dist > same)
            d = std::min(d, dist);
    };
    for (int j = 0; j < spec.m; ++j) {
        const double k = std::max(0.0, std::round(s - spec.b[j]));
        for (double kk = std::max(0.0, k - 1.0); kk <= k + 1.0; kk += 1.0)
            consider(spec.b[j] + kk);
    }
    for (int j = 0; j < spec.n; ++j) {
        const double top = spec.a[j] - 1.0;
        const double k = std::max(0.0, std::round(top - s));
        for (double kk = std::max(0.0, k - 1.0); kk <= k + 1.0; kk += 1.0)
            consider(top - kk);
    }
    return d;
}

} // namespace detail

double GResult::rel_error() const
{
    if (value == 0.0)
        return abs_error == 0.0 ? 0.0 : kInf;
    return abs_error / std::abs(value);
}

void MeijerGSpec::validate() const
{
    if (m < 0 || n < 0 || m > q() || n > p())
        throw SpecError("meijer_g: orders must satisfy 0 <= m <= q, 0 <= n <= p: " + describe());
    if (m == 0 && n == 0)
        throw SpecError("meijer_g: m = n = 0 is not supported: " + describe());
    for (double v : a)
        if (!std::isfinite(v))
            throw SpecError("meijer_g: non-finite upper parameter");
    for (double v : b)
        if (!std::isfinite(v))
            throw SpecError("meijer_g: non-finite lower parameter");
}

void MeijerGSpec::check_existence() const
{
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < m; ++j) {
            const double d = a[k] - b[j];
            if (d > 0.5 && detail::near_integer(d, 1e-12))
                throw SpecError("meijer_g: upper and lower poles collide (a_k - b_j a positive integer): " + describe());
        }
}

std::string MeijerGSpec::describe() const
{
    std::ostringstream os;
    os << "G^{" << m << "," << n << "}_{" << p() << "," << q() << "}[a=(";
    for (int i = 0; i < p(); ++i)
        os << (i ? "," : "") << a[i];
    os << "); b=(";
    for (int i = 0; i < q(); ++i)
        os << (i ? "," : "") << b[i];
    os << ")]";
    return os.str();
}

std::complex<double> meijer_log_kernel(const MeijerGSpec& spec, std::complex<double> s)
{
    std::complex<double> acc = 0.0;
    for (int j = 0; j < spec.m; ++j)
        acc += ln_gamma(spec.b[j] - s);
    for (int j = 0; j < spec.n; ++j)
        acc += ln_gamma(1.0 - spec.a[j] + s);
    for (int j = spec.m; j < spec.q(); ++j) {
        const std::complex<double> y = 1.0 - spec.b[j] + s;
        if (y.imag() == 0.0 && is_nonpositive_integer(y.real()))
            return {-kInf, 0.0};
        acc -= ln_gamma(y);
    }
    for (int j = spec.n; j < spec.p(); ++j) {
        const std::complex<double> y = spec.a[j] - s;
        if (y.imag() == 0.0 && is_nonpositive_integer(y.real()))
            return {-kInf, 0.0};
        acc -= ln_gamma(y);
    }
    return acc;
}

MeijerGSpec inverted(const MeijerGSpec& spec)
{
    MeijerGSpec s;
    s.m = spec.n;
    s.n = spec.m;
    for (double v : spec.b)
        s.a.push_back(1.0 - v);
    for (double v : spec.a)
        s.b.push_back(1.0 - v);
    return s;
}

GResult meijer_g_eval(const MeijerGSpec& spec, double x, const EvalOptions& o)
{
    spec.validate();
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("meijer_g: argument must be finite and > 0");
    if (!(o.target_rel_tol > 0.0) || o.max_series_terms < 1)
        throw DomainError("meijer_g: invalid evaluation options");
    spec.check_existence();

    switch (o.backend) {
    case GBackend::residue:
        return residue_route(spec, x, o);
    case GBackend::contour:
        return contour_eval(spec, x, o);
    case GBackend::automatic:
        break;
    }
    const GResult res = residue_route(spec, x, o);
    if (res.converged)
        return res;
    const GResult con = contour_eval(spec, x, o);
    if (con.converged)
        return con;
    const bool res_ok = std::isfinite(res.value);
    const bool con_ok = std::isfinite(con.value);
    if (res_ok && (!con_ok || res.rel_error() <= con.rel_error()))
        return res;
    return con;
}

double meijer_g(const MeijerGSpec& spec, double x, const EvalOptions& o)
{
    const GResult r = meijer_g_eval(spec, x, o);
    if (!r.converged)
        throw NonConvergence("meijer_g: tolerance not reached for " + spec.describe(), r.value, r.abs_error);
    return r.value;
}

} // namespace uwsec::specfun
