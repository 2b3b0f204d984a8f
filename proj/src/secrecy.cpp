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

#include "uwsec/secrecy.hpp"

#include "uwsec/errors.hpp"
#include "uwsec/specfun/gamma.hpp"
#include "uwsec/specfun/meijer_g.hpp"
#include "uwsec/specfun/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace uwsec {

namespace sf = specfun;

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative weight below which an (R, E) term pair is dropped from the
// per-term sums.
constexpr double kPairCutoff = 1e-16;

// Terms of one RF link grouped by Poisson index k. coef[k][i] = K1 * Gamma(b_k),
// i.e. (C_i / alpha) times the Bessel-series weight.
struct RfGroups {
    double b0 = 0.0;
    std::vector<std::array<double, 3>> coef;
    std::array<double, 3> Psi{};
    double K2 = 0.0;

    double psi_min() const { return *std::min_element(Psi.begin(), Psi.end()); }
};

RfGroups group_terms(const RfSnrModel& m)
{
    const RfDerivedCoeffs& c = m.coeffs();
    if (c.terms.empty())
        throw DomainError("secrecy: RF link has no retained mixture terms");
    int kmin = c.terms.front().k, kmax = kmin;
    for (const RfTerm& t : c.terms) {
        kmin = std::min(kmin, t.k);
        kmax = std::max(kmax, t.k);
    }
    RfGroups g;
    g.Psi = c.Psi;
    g.K2 = c.K2;
    g.coef.assign(static_cast<std::size_t>(kmax - kmin + 1), {0.0, 0.0, 0.0});
    for (const RfTerm& t : c.terms) {
        if (t.k == kmin)
            g.b0 = t.b;
        g.coef[static_cast<std::size_t>(t.k - kmin)][static_cast<std::size_t>(t.i)] =
            t.sign_K1 * std::exp(t.log_abs_K1 + sf::ln_gamma(t.b));
    }
    return g;
}

// sum_k Gamma(b_k - s)/Gamma(b_k) sum_i coef/(Psi_i + s), without the
// leading Gamma(b_0 - s)/Gamma(b_0) which the caller keeps in log form.
cd eve_sum(const RfGroups& g, cd s)
{
    std::array<cd, 3> inv;
    for (std::size_t i = 0; i < 3; ++i)
        inv[i] = 1.0 / (g.Psi[i] + s);
    cd ratio = 1.0, acc = 0.0;
    for (std::size_t k = 0; k < g.coef.size(); ++k) {
        const auto& c = g.coef[k];
        acc += ratio * (c[0] * inv[0] + c[1] * inv[1] + c[2] * inv[2]);
        const double b = g.b0 + static_cast<double>(k);
        ratio *= (b - s) / b;
    }
    return acc;
}

cd eve_log_lead(const RfGroups& g, cd s)
{
    return sf::ln_gamma(g.b0 - s) - sf::ln_gamma(g.b0);
}

// sum_k Gamma(b_k + s)/Gamma(b_k) sum_i coef/(Psi_i - s), leading factor excluded.
cd main_sum(const RfGroups& g, cd s)
{
    std::array<cd, 3> inv;
    for (std::size_t i = 0; i < 3; ++i)
        inv[i] = 1.0 / (g.Psi[i] - s);
    cd ratio = 1.0, acc = 0.0;
    for (std::size_t k = 0; k < g.coef.size(); ++k) {
        const auto& c = g.coef[k];
        acc += ratio * (c[0] * inv[0] + c[1] * inv[1] + c[2] * inv[2]);
        const double b = g.b0 + static_cast<double>(k);
        ratio *= (b + s) / b;
    }
    return acc;
}

cd main_log_lead(const RfGroups& g, cd s)
{
    return sf::ln_gamma(g.b0 + s) - sf::ln_gamma(g.b0);
}

// Kernel value exp(log_part) * factor.
struct Kernel {
    cd log_part;
    cd factor;
};

struct LineResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
};

double log_abs(const Kernel& k)
{
    const double a = std::abs(k.factor);
    return a > 0.0 ? k.log_part.real() + std::log(a) : -kInf;
}

// (1 / 2 pi i) int_{c - i inf}^{c + i inf} K(s) x^s ds for a kernel that is
// real on the real axis, with c in (lo, hi) minimising |K(c)| x^c.
LineResult mellin_line(const std::function<Kernel(cd)>& K, double lo, double hi, double log_x,
                       double tol)
{
    const double width = hi - lo;
    double c = 0.5 * (lo + hi), best = kInf;
    for (int j = 0; j <= 40; ++j) {
        const double u = lo + width * (0.1 + 0.8 * j / 40.0);
        const double v = log_abs(K(cd(u, 0.0))) + u * log_x;
        if (v < best) {
            best = v;
            c = u;
        }
    }
    if (!std::isfinite(best))
        return {0.0, 0.0, true};

    auto scaled = [&](double t) {
        const cd s(c, t);
        const Kernel k = K(s);
        const cd l = k.log_part + s * log_x - best;
        if (l.real() < -745.0)
            return cd(0.0);
        return std::exp(l) * k.factor;
    };
    double T = 2.0, edge = 1.0;
    int quiet = 0;
    for (; T < 600.0; T *= 1.25) {
        edge = std::abs(scaled(T));
        if (edge < 1e-4 * tol) {
            if (++quiet >= 2)
                break;
        } else {
            quiet = 0;
        }
    }
    sf::QuadOptions qo;
    qo.rel_tol = 0.1 * tol;
    qo.abs_tol = 1e-16;
    qo.max_intervals = 20000;
    qo.initial_panels = std::clamp(static_cast<int>(std::ceil(T * (1.0 + std::abs(log_x)) / 3.0)), 8, 2048);
    const sf::QuadResult q = sf::integrate([&](double t) { return scaled(t).real(); }, 0.0, T, qo);

    const double scale = std::exp(best) / kPi;
    LineResult r;
    r.value = scale * q.value;
    r.abs_error = scale * (q.abs_error + edge);
    r.converged = q.converged && (r.abs_error <= tol * std::abs(r.value) || r.abs_error < 1e-15);
    return r;
}

// int_0^inf g(y) dy on a log axis. The window grows from the neighbourhood of
// `center` until the integrand is negligible at both ends; g must be >= 0.
LineResult integrate_positive(const std::function<double(double)>& g, double center, double tol)
{
    auto h = [&](double u) {
        const double y = std::exp(u);
        return g(y) * y;
    };
    const double uc = std::log(center);
    double peak = 0.0, u_peak = uc;
    for (double u = uc - 40.0; u <= uc + 40.0; u += 0.5) {
        const double v = std::abs(h(u));
        if (v > peak) {
            peak = v;
            u_peak = u;
        }
    }
    if (!(peak > 0.0))
        return {0.0, 0.0, true};
    const double floor = 1e-3 * tol * peak;
    auto extend = [&](double step) {
        double u = u_peak;
        int quiet = 0;
        for (int i = 0; i < 1500; ++i) {
            u += step;
            if (std::abs(h(u)) < floor) {
                if (++quiet >= 3)
                    break;
            } else {
                quiet = 0;
            }
        }
        return u;
    };
    const double lo = extend(-1.0), hi = extend(1.0);
    sf::QuadOptions qo;
    qo.rel_tol = tol;
    qo.abs_tol = 1e-2 * tol * peak;
    qo.max_intervals = 20000;
    qo.initial_panels = std::clamp(static_cast<int>(std::ceil(hi - lo)), 8, 1024);
    const sf::QuadResult q = sf::integrate_log_axis(g, lo, hi, qo);
    LineResult r;
    r.value = q.value;
    r.abs_error = q.abs_error + 3.0 * floor;
    r.converged = q.converged;
    return r;
}

MetricResult clamp_unit(MetricResult r)
{
    if (r.value < 0.0) {
        r.value = 0.0;
        r.clamped = true;
    } else if (r.value > 1.0) {
        r.value = 1.0;
        r.clamped = true;
    }
    return r;
}

void append_note(MetricResult& r, const std::string& s)
{
    if (s.empty())
        return;
    if (!r.note.empty())
        r.note += "; ";
    r.note += s;
}

MetricResult from_line(const LineResult& l, Route route, const char* what)
{
    MetricResult r;
    r.value = l.value;
    r.abs_error = l.abs_error;
    r.route = route;
    if (!l.converged) {
        std::ostringstream os;
        os << what << ": tolerance not reached (abs. error " << l.abs_error << ")";
        throw NonConvergence(os.str(), l.value, l.abs_error);
    }
    return r;
}

// Optical main-link constants seen through gamma -> phi * gamma:
// F_D(phi y) = exp(log_u3) y^zeta G^{r,1}_{1,r+1}[u4 y | 1 - zeta; 0, [1/2], -zeta].
struct ScaledOptical {
    double zeta = 0.0;
    double log_u3 = 0.0;
    double u4 = 0.0;
    int r = 1;
};

ScaledOptical scaled_optical(const RisCascadeStats& s, double phi)
{
    ScaledOptical o;
    o.r = s.r;
    o.zeta = s.rho / s.r;
    o.log_u3 = s.log_Upsilon3 + o.zeta * std::log(phi);
    o.u4 = s.Upsilon4 * phi;
    return o;
}

sf::MeijerGSpec z1_spec(const RfTerm& main, const RfTerm& eve)
{
    return {3, 2, {1.0 - eve.Psi, 1.0 - main.b, 1.0, 1.0 + main.Psi}, {eve.b, main.Psi, 0.0, -eve.Psi}};
}

sf::MeijerGSpec z2_spec(const RfTerm& eve, const ScaledOptical& d)
{
    sf::MeijerGSpec s;
    s.m = 2;
    s.n = 1 + d.r;
    s.a = {1.0 - eve.Psi, 1.0 - d.zeta};
    if (d.r == 2)
        s.a.push_back(0.5 - d.zeta);
    s.a.push_back(1.0);
    s.b = {eve.b, 0.0, -eve.Psi};
    return s;
}

// Scenario II/III optical eavesdropping integral int F_D(phi y) f_Etilde(y) dy
// as one G^{rE+1, rD}_{rD+1, rE+1}, with its log prefactor.
struct OpticalPair {
    sf::MeijerGSpec spec;
    double log_pref = 0.0;
    double arg = 0.0;
};

OpticalPair optical_pair(const RisCascadeStats& d_stats, const RisCascadeStats& e_stats, double phi)
{
    const ScaledOptical d = scaled_optical(d_stats, phi);
    const int rE = e_stats.r;
    const double zE = e_stats.rho / rE;
    const double zeta = d.zeta + zE;
    OpticalPair p;
    p.spec.m = rE + 1;
    p.spec.n = d.r;
    p.spec.a = {1.0 - zeta};
    if (d.r == 2)
        p.spec.a.push_back(0.5 - zeta);
    p.spec.a.push_back(1.0 - zE);
    for (int j = 0; j < rE; ++j)
        p.spec.b.push_back(static_cast<double>(j) / rE);
    p.spec.b.push_back(-zE);
    p.log_pref = d.log_u3 + e_stats.log_Upsilon1 + 0.5 * std::log(static_cast<double>(rE))
        + 0.5 * (1.0 - rE) * std::log(2.0 * kPi) - zeta * std::log(d.u4);
    p.arg = std::pow(e_stats.Upsilon2, rE) * std::pow(static_cast<double>(rE), -rE) / d.u4;
    return p;
}

sf::EvalOptions eval_opts(double tol)
{
    sf::EvalOptions o;
    o.target_rel_tol = std::max(tol, 1e-12);
    return o;
}

double g_checked(const sf::MeijerGSpec& spec, double x, double tol, double& err)
{
    const sf::GResult g = sf::meijer_g_eval(spec, x, eval_opts(tol));
    if (!g.converged && g.abs_error > 10.0 * tol * std::abs(g.value) && g.abs_error > 1e-15)
        throw NonConvergence("secrecy: Meijer G term did not converge: " + spec.describe(), g.value, g.abs_error);
    err += g.abs_error;
    return g.value;
}

double max_pair_weight(const RfDerivedCoeffs& a, const RfDerivedCoeffs& b)
{
    double wa = 0.0, wb = 0.0;
    for (const RfTerm& t : a.terms)
        wa = std::max(wa, t.weight);
    for (const RfTerm& t : b.terms)
        wb = std::max(wb, t.weight);
    return wa * wb;
}

// P{gamma_R <= phi gamma_E}.
MetricResult rf_pair_impl(const RfSnrModel& main, const RfSnrModel& eve, double phi, const SeriesControl& ctl)
{
    const double x = eve.coeffs().K2 / (phi * main.coeffs().K2);
    if (ctl.mode == ClosedFormMode::per_term) {
        const double wmax = max_pair_weight(main.coeffs(), eve.coeffs());
        double sum = 0.0, err = 0.0;
        for (const RfTerm& tr : main.coeffs().terms)
            for (const RfTerm& te : eve.coeffs().terms) {
                if (tr.weight * te.weight < kPairCutoff * wmax)
                    continue;
                const double k = tr.K1() * te.K1();
                const double g = g_checked(z1_spec(tr, te), x, ctl.tol, err);
                sum += k * g;
            }
        MetricResult r;
        r.value = sum;
        r.abs_error = err;
        return r;
    }
    const RfGroups gr = group_terms(main), ge = group_terms(eve);
    auto K = [&](cd s) {
        return Kernel{eve_log_lead(ge, s) + main_log_lead(gr, s), -eve_sum(ge, s) * main_sum(gr, s) / s};
    };
    const double lo = -std::min(ge.psi_min(), gr.b0);
    return from_line(mellin_line(K, lo, 0.0, std::log(x), ctl.tol), Route::closed_form, "rf_pair_outage");
}

// P{gamma_D <= phi gamma_E} with E the RF eavesdropper.
MetricResult optical_rf_pair_impl(const RisSnrModel& main, const RfSnrModel& eve, double phi,
                                  const SeriesControl& ctl)
{
    const ScaledOptical d = scaled_optical(main.stats(), phi);
    const double lpref = d.log_u3 - d.zeta * std::log(d.u4);
    const double x = eve.coeffs().K2 / d.u4;
    if (ctl.mode == ClosedFormMode::per_term) {
        double sum = 0.0, err = 0.0;
        for (const RfTerm& te : eve.coeffs().terms) {
            const double e0 = err;
            const double g = g_checked(z2_spec(te, d), x, ctl.tol, err);
            const double k = te.K1() * std::exp(lpref);
            sum += k * g;
            err = e0 + std::abs(k) * (err - e0);
        }
        MetricResult r;
        r.value = sum;
        r.abs_error = err;
        return r;
    }
    const RfGroups ge = group_terms(eve);
    auto K = [&](cd s) {
        cd l = eve_log_lead(ge, s) + sf::ln_gamma(d.zeta + s) + lpref;
        if (d.r == 2)
            l += sf::ln_gamma(d.zeta + 0.5 + s);
        return Kernel{l, -eve_sum(ge, s) / s};
    };
    const double lo = -std::min(ge.psi_min(), d.zeta);
    return from_line(mellin_line(K, lo, 0.0, std::log(x), ctl.tol), Route::closed_form, "sop1 optical term");
}

// Joint term int F_R(phi y) F_D(phi y) f_E(y) dy as a double Mellin-Barnes
// integral over (s, t): s for the optical CDF, t for the eavesdropper PDF.
MetricResult cross_contour(const RfSnrModel& main, const RisSnrModel& opt, const RfSnrModel& eve, double phi,
                           double tol)
{
    const RfGroups gr = group_terms(main), ge = group_terms(eve);
    const ScaledOptical d = scaled_optical(opt.stats(), phi);
    const double k2r = phi * gr.K2;
    const double zeta = d.zeta;
    const double lpref = d.log_u3 - zeta * std::log(k2r);
    const double lx = std::log(d.u4 / k2r), ly = std::log(ge.K2 / k2r);

    auto K = [&](cd s, cd t) {
        const cd w = zeta + s + t;
        cd l = main_log_lead(gr, w) + sf::ln_gamma(-s) + eve_log_lead(ge, t) + lpref + s * lx + t * ly;
        if (d.r == 2)
            l += sf::ln_gamma(0.5 - s);
        const cd f = -main_sum(gr, w) / w / (zeta + s) * eve_sum(ge, t);
        return Kernel{l, f};
    };

    const double psi_e = ge.psi_min(), b_e = ge.b0, b_r = gr.b0;
    auto margin = [&](double u, double v) {
        return std::min({u + zeta, -u, v + psi_e, b_e - v, u + v + zeta + b_r, -zeta - u - v});
    };
    const double want = 0.1 * std::min({zeta, psi_e + b_e, b_r});
    double best = kInf, c1 = 0.0, c2 = 0.0, widest = 0.0, w1 = 0.0, w2 = 0.0;
    constexpr int grid = 60;
    for (int i = 1; i < grid; ++i) {
        const double u = -zeta + zeta * i / grid;
        for (int j = 1; j < grid; ++j) {
            const double v = -psi_e + (psi_e + b_e) * j / grid;
            const double mg = margin(u, v);
            if (!(mg > 0.0))
                continue;
            if (mg > widest) {
                widest = mg;
                w1 = u;
                w2 = v;
            }
            if (mg < want)
                continue;
            const double val = log_abs(K(cd(u, 0.0), cd(v, 0.0)));
            if (val < best) {
                best = val;
                c1 = u;
                c2 = v;
            }
        }
    }
    if (!std::isfinite(best)) {
        if (!(widest > 0.0))
            throw SpecError("secrecy: no contour pair separates the poles of the joint outage term");
        c1 = w1;
        c2 = w2;
        best = log_abs(K(cd(c1, 0.0), cd(c2, 0.0)));
    }

    auto value = [&](double t1, double t2) {
        const Kernel k = K(cd(c1, t1), cd(c2, t2));
        const cd l = k.log_part - best;
        if (l.real() < -745.0)
            return cd(0.0);
        return std::exp(l) * k.factor;
    };
    double T = 2.0, edge = 1.0;
    for (; T < 200.0; T *= 1.3) {
        edge = 0.0;
        for (int k = 0; k <= 24; ++k) {
            const double w = -T + 2.0 * T * k / 24.0;
            edge = std::max({edge, std::abs(value(T, w)), std::abs(value(std::abs(w), T)),
                             std::abs(value(std::abs(w), -T))});
        }
        if (edge * T < 1e-4 * tol)
            break;
    }
    sf::QuadOptions inner;
    inner.rel_tol = 0.05 * tol;
    inner.abs_tol = 1e-6 * tol;
    inner.max_intervals = 4000;
    inner.initial_panels = std::clamp(static_cast<int>(std::ceil(2.0 * T * (1.0 + std::abs(ly)) / 6.0)), 4, 256);
    bool ok = true;
    double inner_err = 0.0;
    int calls = 0;
    auto outer_f = [&](double t1) {
        const sf::QuadResult q =
            sf::integrate([&](double t2) { return value(t1, t2).real(); }, -T, T, inner);
        ok = ok && q.converged;
        inner_err += q.abs_error;
        ++calls;
        return q.value;
    };
    sf::QuadOptions outer;
    outer.rel_tol = 0.1 * tol;
    outer.abs_tol = 1e-6 * tol;
    outer.max_intervals = 4000;
    outer.initial_panels = std::clamp(static_cast<int>(std::ceil(T * (1.0 + std::abs(lx)) / 6.0)), 4, 128);
    const sf::QuadResult q = sf::integrate(outer_f, 0.0, T, outer);

    const double scale = std::exp(best) / (2.0 * kPi * kPi);
    LineResult r;
    r.value = scale * q.value;
    r.abs_error = scale * (q.abs_error + (calls ? inner_err / calls : 0.0) * T + edge * T);
    r.converged = ok && q.converged && (r.abs_error <= tol * std::abs(r.value) || r.abs_error < 1e-12);
    return from_line(r, Route::closed_form, "sop1 joint term");
}

MetricResult cross_per_term(const RfSnrModel& main, const RisSnrModel& opt, const RfSnrModel& eve, double phi,
                            double tol)
{
    const ScaledOptical d = scaled_optical(opt.stats(), phi);
    const double k2r = phi * main.coeffs().K2;
    const double lpref = d.log_u3 - d.zeta * std::log(k2r);
    const double x = d.u4 / k2r, y = eve.coeffs().K2 / k2r;
    const sf::MeijerGSpec dspec = scaled_optical(opt.stats(), 1.0).r == 2
        ? sf::MeijerGSpec{2, 1, {1.0 - d.zeta}, {0.0, 0.5, -d.zeta}}
        : sf::MeijerGSpec{1, 1, {1.0 - d.zeta}, {0.0, -d.zeta}};
    const double wmax = max_pair_weight(main.coeffs(), eve.coeffs());
    double sum = 0.0, err = 0.0;
    for (const RfTerm& tr : main.coeffs().terms)
        for (const RfTerm& te : eve.coeffs().terms) {
            if (tr.weight * te.weight < kPairCutoff * wmax)
                continue;
            const sf::BivariateGSpec spec =
                sf::triple_product_spec(RfSnrModel::cdf_spec(tr), d.zeta, dspec, RfSnrModel::pdf_spec(te));
            const sf::GResult g = sf::bivariate_meijer_g_eval(spec, x, y, eval_opts(tol));
            const double k = tr.K1() * te.K1() * std::exp(lpref);
            sum += k * g.value;
            err += std::abs(k) * g.abs_error;
        }
    MetricResult r;
    r.value = sum;
    r.abs_error = err;
    return r;
}

MetricResult cross_quadrature(const RfSnrModel& main, const RisSnrModel& opt, const RfSnrModel& eve, double phi,
                              double tol)
{
    auto g = [&](double y) { return main.cdf(phi * y) * opt.cdf(phi * y) * eve.pdf(y); };
    return from_line(integrate_positive(g, 1.0 / eve.coeffs().K2, tol), Route::quadrature, "sop1 joint term");
}

struct Models {
    RfSnrModel rf_main;
    RfSnrModel rf_eve;
    RisSnrModel uowc_main;
    RisSnrModel uowc_eve;

    explicit Models(const ScenarioConfig& c)
        : rf_main(c.rf_main), rf_eve(c.rf_eve), uowc_main(c.uowc_main), uowc_eve(c.uowc_eve)
    {
    }
};

MetricResult optical_pair_impl(const RisSnrModel& main, const RisSnrModel& eve, double phi, double tol)
{
    const OpticalPair p = optical_pair(main.stats(), eve.stats(), phi);
    double err = 0.0;
    const double g = g_checked(p.spec, p.arg, tol, err);
    MetricResult r;
    r.value = std::exp(p.log_pref) * g;
    r.abs_error = std::exp(p.log_pref) * err;
    return r;
}

double optical_pair_asymptotic(const RisSnrModel& main, const RisSnrModel& eve, double phi)
{
    const OpticalPair p = optical_pair(main.stats(), eve.stats(), phi);
    return std::exp(p.log_pref) * sf::meijer_g_large_x_leading(p.spec, p.arg);
}

double rf_pair_asymptotic(const RfSnrModel& main, const RfSnrModel& eve, double phi)
{
    const double x = eve.coeffs().K2 / (phi * main.coeffs().K2);
    const double wmax = max_pair_weight(main.coeffs(), eve.coeffs());
    double sum = 0.0;
    for (const RfTerm& tr : main.coeffs().terms)
        for (const RfTerm& te : eve.coeffs().terms) {
            if (tr.weight * te.weight < kPairCutoff * wmax)
                continue;
            sum += tr.K1() * te.K1() * sf::meijer_g_large_x_leading(z1_spec(tr, te), x);
        }
    return sum;
}

double optical_rf_pair_asymptotic(const RisSnrModel& main, const RfSnrModel& eve, double phi)
{
    const ScaledOptical d = scaled_optical(main.stats(), phi);
    const double lpref = d.log_u3 - d.zeta * std::log(d.u4);
    const double x = eve.coeffs().K2 / d.u4;
    double sum = 0.0;
    for (const RfTerm& te : eve.coeffs().terms)
        sum += te.K1() * std::exp(lpref) * sf::meijer_g_large_x_leading(z2_spec(te, d), x);
    return sum;
}

Sop1Components components_impl(const Models& m, double phi, const SeriesControl& ctl)
{
    Sop1Components c;
    c.rf = rf_pair_impl(m.rf_main, m.rf_eve, phi, ctl);
    c.uowc = optical_rf_pair_impl(m.uowc_main, m.rf_eve, phi, ctl);
    if (ctl.tol < 1e-4)
        c.cross = cross_quadrature(m.rf_main, m.uowc_main, m.rf_eve, phi, ctl.tol);
    else if (ctl.mode == ClosedFormMode::per_term)
        c.cross = cross_per_term(m.rf_main, m.uowc_main, m.rf_eve, phi, ctl.tol);
    else
        c.cross = cross_contour(m.rf_main, m.uowc_main, m.rf_eve, phi, ctl.tol);
    return c;
}

MetricResult sop1_impl(const Models& m, double phi, const SeriesControl& ctl)
{
    const Sop1Components c = components_impl(m, phi, ctl);
    MetricResult r;
    r.value = c.rf.value + c.uowc.value - c.cross.value;
    r.abs_error = c.rf.abs_error + c.uowc.abs_error + c.cross.abs_error;
    r.route = Route::closed_form;
    if (c.cross.route == Route::quadrature)
        append_note(r, "joint term by quadrature");
    return clamp_unit(r);
}

MetricResult sop2_impl(const Models& m, double phi, const SeriesControl& ctl)
{
    const MetricResult i = optical_pair_impl(m.uowc_main, m.uowc_eve, phi, ctl.tol);
    const double fr = phi > 1.0 ? m.rf_main.cdf(phi - 1.0) : 0.0;
    MetricResult r;
    r.value = i.value * (1.0 - fr) + fr;
    r.abs_error = i.abs_error;
    return clamp_unit(r);
}

MetricResult sop3_impl(const Models& m, double phi, const SeriesControl& ctl)
{
    const MetricResult a = rf_pair_impl(m.rf_main, m.rf_eve, phi, ctl);
    const MetricResult b = optical_pair_impl(m.uowc_main, m.uowc_eve, phi, ctl.tol);
    MetricResult r;
    // Expanded so that small outage probabilities keep full relative precision.
    r.value = a.value + b.value - a.value * b.value;
    r.abs_error = a.abs_error + b.abs_error;
    return clamp_unit(r);
}

MetricResult sop_dispatch(const Models& m, const ScenarioConfig& cfg, double phi, const SeriesControl& ctl)
{
    switch (cfg.scenario) {
    case Scenario::I:
        return sop1_impl(m, phi, ctl);
    case Scenario::II:
        return sop2_impl(m, phi, ctl);
    case Scenario::III:
        return sop3_impl(m, phi, ctl);
    }
    throw DomainError("secrecy: unknown scenario");
}

void check(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    cfg.validate();
    ctl.validate();
}

} // namespace

const char* scenario_name(Scenario s)
{
    switch (s) {
    case Scenario::I:
        return "I";
    case Scenario::II:
        return "II";
    case Scenario::III:
        return "III";
    }
    return "?";
}

const char* route_name(Route r)
{
    switch (r) {
    case Route::closed_form:
        return "closed_form";
    case Route::series:
        return "series";
    case Route::quadrature:
        return "quadrature";
    }
    return "?";
}

void ScenarioConfig::validate() const
{
    rf_main.validate();
    rf_eve.validate();
    uowc_main.validate();
    uowc_eve.validate();
    require_domain(Rs >= 0.0 && std::isfinite(Rs), "ScenarioConfig: Rs must be finite and >= 0");
    require_domain(scenario == Scenario::I || scenario == Scenario::II || scenario == Scenario::III,
                   "ScenarioConfig: unknown scenario");
}

double ScenarioConfig::phi() const
{
    return std::exp2(Rs);
}

void SeriesControl::validate() const
{
    require_domain(z_max >= 1, "SeriesControl: z_max must be >= 1");
    require_domain(tol > 0.0 && tol < 1.0, "SeriesControl: tol must be in (0, 1)");
}

Sop1Components sop1_components(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    check(cfg, ctl);
    return components_impl(Models(cfg), cfg.phi(), ctl);
}

MetricResult rf_pair_outage(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    check(cfg, ctl);
    return rf_pair_impl(RfSnrModel(cfg.rf_main), RfSnrModel(cfg.rf_eve), cfg.phi(), ctl);
}

MetricResult uowc_pair_outage(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    check(cfg, ctl);
    return optical_pair_impl(RisSnrModel(cfg.uowc_main), RisSnrModel(cfg.uowc_eve), cfg.phi(), ctl.tol);
}

MetricResult asc_quadrature(const ScenarioConfig& cfg, double rel_tol)
{
    cfg.validate();
    const RfSnrModel eve(cfg.rf_eve);
    const DualHopModel eq(RfSnrModel(cfg.rf_main), RisSnrModel(cfg.uowc_main));
    auto g = [&](double y) { return eve.cdf(y) * eq.ccdf(y) / (1.0 + y); };
    const LineResult l = integrate_positive(g, 1.0 / eve.coeffs().K2, rel_tol);
    MetricResult r = from_line(l, Route::quadrature, "asc_quadrature");
    if (r.value < 0.0) {
        r.value = 0.0;
        r.clamped = true;
    }
    return r;
}

MetricResult asc_scenario1(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    check(cfg, ctl);
    // The termwise route expands 1/(1+y) into Meijer G form; its first
    // panel pairs the upper parameter 1 with the lower parameter 0, so the
    // defining contour integral does not exist and check_existence throws.
    try {
        const RfSnrModel eve(cfg.rf_eve);
        for (const RfTerm& t : eve.coeffs().terms) {
            const sf::MeijerGSpec first{2, 3, {1.0 - t.Psi, 1.0, 0.0}, {t.b, 0.0, 0.0, -t.Psi}};
            first.check_existence();
        }
        throw SpecError("asc_scenario1: termwise series route not available");
    } catch (const SpecError& e) {
        if (!ctl.fallback_quadrature)
            throw;
        MetricResult r = asc_quadrature(cfg, ctl.tol);
        append_note(r, std::string("series route unavailable (") + e.what() + ")");
        return r;
    }
}

MetricResult sop1_lower(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    check(cfg, ctl);
    return sop1_impl(Models(cfg), cfg.phi(), ctl);
}

MetricResult sop2_lower(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    check(cfg, ctl);
    return sop2_impl(Models(cfg), cfg.phi(), ctl);
}

MetricResult sop3_lower(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    check(cfg, ctl);
    return sop3_impl(Models(cfg), cfg.phi(), ctl);
}

MetricResult sop_lower(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    check(cfg, ctl);
    return sop_dispatch(Models(cfg), cfg, cfg.phi(), ctl);
}

MetricResult sop_quadrature(const ScenarioConfig& cfg, double rel_tol)
{
    cfg.validate();
    const Models m(cfg);
    const double phi = cfg.phi();
    const RfSnrModel& eve = m.rf_eve;
    auto rf_pair = [&] {
        auto g = [&](double y) { return m.rf_main.cdf(phi * y) * eve.pdf(y); };
        return integrate_positive(g, 1.0 / eve.coeffs().K2, rel_tol);
    };
    auto optical_pair = [&] {
        auto g = [&](double y) { return m.uowc_main.cdf(phi * y) * m.uowc_eve.pdf(y); };
        return integrate_positive(g, m.uowc_eve.params().gbar, rel_tol);
    };
    LineResult l;
    switch (cfg.scenario) {
    case Scenario::I: {
        const DualHopModel eq(m.rf_main, m.uowc_main);
        auto g = [&](double y) { return eq.cdf(phi * y) * eve.pdf(y); };
        l = integrate_positive(g, 1.0 / eve.coeffs().K2, rel_tol);
        break;
    }
    case Scenario::II: {
        l = optical_pair();
        const double fr = phi > 1.0 ? m.rf_main.cdf(phi - 1.0) : 0.0;
        l.value = l.value * (1.0 - fr) + fr;
        break;
    }
    case Scenario::III: {
        const LineResult a = rf_pair(), b = optical_pair();
        l.value = 1.0 - (1.0 - a.value) * (1.0 - b.value);
        l.abs_error = a.abs_error + b.abs_error;
        l.converged = a.converged && b.converged;
        break;
    }
    }
    return clamp_unit(from_line(l, Route::quadrature, "sop_quadrature"));
}

double sop1_asymptotic(const ScenarioConfig& cfg)
{
    cfg.validate();
    const Models m(cfg);
    const double phi = cfg.phi();
    return rf_pair_asymptotic(m.rf_main, m.rf_eve, phi) + optical_rf_pair_asymptotic(m.uowc_main, m.rf_eve, phi);
}

double sop2_asymptotic(const ScenarioConfig& cfg)
{
    cfg.validate();
    const Models m(cfg);
    const double phi = cfg.phi();
    const double i = optical_pair_asymptotic(m.uowc_main, m.uowc_eve, phi);
    const double fr = phi > 1.0 ? m.rf_main.cdf_asymptotic(phi - 1.0) : 0.0;
    return i * (1.0 - fr) + fr;
}

double sop3_asymptotic(const ScenarioConfig& cfg)
{
    cfg.validate();
    const Models m(cfg);
    const double phi = cfg.phi();
    const double a = rf_pair_asymptotic(m.rf_main, m.rf_eve, phi);
    const double b = optical_pair_asymptotic(m.uowc_main, m.uowc_eve, phi);
    return a + b - a * b;
}

double sop_asymptotic(const ScenarioConfig& cfg)
{
    switch (cfg.scenario) {
    case Scenario::I:
        return sop1_asymptotic(cfg);
    case Scenario::II:
        return sop2_asymptotic(cfg);
    case Scenario::III:
        return sop3_asymptotic(cfg);
    }
    throw DomainError("secrecy: unknown scenario");
}

MetricResult spsc(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    ScenarioConfig c = cfg;
    c.Rs = 0.0;
    MetricResult r = sop_lower(c, ctl);
    r.value = 1.0 - r.value;
    return r;
}

MetricResult est(const ScenarioConfig& cfg, const SeriesControl& ctl)
{
    MetricResult r = sop_lower(cfg, ctl);
    r.value = cfg.Rs * (1.0 - r.value);
    r.abs_error *= cfg.Rs;
    return r;
}

OptimalRate est_optimal_rs(const ScenarioConfig& cfg, const std::vector<double>& rs_grid, const SeriesControl& ctl)
{
    check(cfg, ctl);
    require_domain(!rs_grid.empty(), "est_optimal_rs: empty grid");
    std::vector<double> grid = rs_grid;
    std::sort(grid.begin(), grid.end());
    require_domain(grid.front() > 0.0, "est_optimal_rs: grid points must be > 0");

    const Models m(cfg);
    auto f = [&](double rs) {
        ScenarioConfig c = cfg;
        c.Rs = rs;
        return rs * (1.0 - sop_dispatch(m, c, c.phi(), ctl).value);
    };
    std::vector<double> vals(grid.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        vals[i] = f(grid[i]);
        if (vals[i] > vals[j])
            j = i;
    }
    OptimalRate best{grid[j], vals[j]};
    if (grid.size() < 2)
        return best;
    double lo = grid[j == 0 ? 0 : j - 1], hi = grid[std::min(j + 1, grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    const double stop = 1e-6 * (grid.back() - grid.front()) + 1e-12;
    while (hi - lo > stop) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    const double xm = 0.5 * (lo + hi);
    const double fm = f(xm);
    if (fm > best.est)
        best = {xm, fm};
    return best;
}

} // namespace uwsec
