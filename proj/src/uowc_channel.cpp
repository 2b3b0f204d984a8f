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

#include "uwsec/uowc_channel.hpp"

#include "uwsec/errors.hpp"
#include "uwsec/specfun/gamma.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace uwsec {

namespace sf = specfun;

void MeggParams::validate() const
{
    std::ostringstream bad;
    if (!(w > 0.0 && w < 1.0))
        bad << "w must lie in (0,1); ";
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        bad << "lambda must be > 0; ";
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !std::isfinite(a + b + c))
        bad << "a, b, c must be > 0; ";
    if (!(xi > 0.0) || !std::isfinite(xi))
        bad << "xi must be > 0; ";
    if (!(J > 0.0) || !std::isfinite(J))
        bad << "J must be > 0; ";
    if (!bad.str().empty())
        throw DomainError("MeggParams: " + bad.str());
}

void UowcLinkParams::validate() const
{
    hop1.validate();
    hop2.validate();
    if (N < 1)
        throw DomainError("UowcLinkParams: N must be >= 1");
    if (r != Detection::HD && r != Detection::IMDD)
        throw DomainError("UowcLinkParams: r must be 1 (HD) or 2 (IM/DD)");
    if (!(gbar > 0.0) || !std::isfinite(gbar))
        throw DomainError("UowcLinkParams: gbar must be > 0");
}

namespace {

double pointing_moment(double p, const MeggParams& h)
{
    return std::pow(h.J, p) * h.xi * h.xi / (h.xi * h.xi + p);
}

double exp_moment(double p, const MeggParams& h)
{
    return std::pow(h.lambda, p) * sf::gamma(1.0 + p);
}

double gg_moment(double p, const MeggParams& h)
{
    const double arg = h.a + p / h.c;
    if (sf::is_nonpositive_integer(arg))
        throw DomainError("megg moment: gamma argument at a pole");
    return std::exp(p * std::log(h.b) + sf::ln_gamma(arg) - sf::ln_gamma(h.a));
}

} // namespace

double megg_hop_moment(double p, const MeggParams& h)
{
    h.validate();
    require_domain(p >= 0.0, "megg_hop_moment: p must be >= 0");
    return pointing_moment(p, h) * (h.w * exp_moment(p, h) + (1.0 - h.w) * gg_moment(p, h));
}

AlephTerms megg_product_moment_terms(double p, const MeggParams& h1, const MeggParams& h2)
{
    h1.validate();
    h2.validate();
    require_domain(p >= 0.0, "megg_product_moment: p must be >= 0");
    const double pe = pointing_moment(p, h1) * pointing_moment(p, h2);
    const double e1 = exp_moment(p, h1), e2 = exp_moment(p, h2);
    const double g1 = gg_moment(p, h1), g2 = gg_moment(p, h2);
    AlephTerms t;
    t.aleph1 = pe * h1.w * h2.w * e1 * e2;
    t.aleph2 = pe * h1.w * (1.0 - h2.w) * e1 * g2;
    t.aleph3 = pe * (1.0 - h1.w) * h2.w * g1 * e2;
    t.aleph4 = pe * (1.0 - h1.w) * (1.0 - h2.w) * g1 * g2;
    return t;
}

double megg_product_moment(double p, const MeggParams& hop1, const MeggParams& hop2)
{
    return megg_product_moment_terms(p, hop1, hop2).sum();
}

std::vector<double> RisCascadeStats::cdf_lower() const
{
    std::vector<double> b{0.0};
    if (r == 2)
        b.push_back(Upsilon5);
    b.push_back(-rho / r);
    return b;
}

sf::MeijerGSpec RisCascadeStats::cdf_spec() const
{
    return {r, 1, {1.0 - rho / r}, cdf_lower()};
}

RisCascadeStats gamma_approx(const UowcLinkParams& p)
{
    p.validate();
    RisCascadeStats s;
    s.m1 = megg_product_moment(1.0, p.hop1, p.hop2);
    s.m2 = megg_product_moment(2.0, p.hop1, p.hop2);
    const double var = s.m2 - s.m1 * s.m1;
    if (!(var > 0.0) || !(s.m1 > 0.0))
        throw DegenerateError("gamma_approx: product moments give a non-positive variance");
    s.N = p.N;
    s.r = p.r_int();
    s.rho = p.N * s.m1 * s.m1 / var;
    s.w_scale = var / s.m1;
    const double r = s.r;
    s.tau = p.gbar * std::pow(s.m1, r);
    const double lm1 = std::log(s.m1), lw = std::log(s.w_scale), lt = std::log(s.tau);
    const double lg_rho = sf::ln_gamma(s.rho);
    s.log_Upsilon1 = s.rho * lm1 - std::log(r) - lg_rho - s.rho * lw - s.rho / r * lt;
    s.Upsilon2 = s.m1 / (s.w_scale * std::pow(s.tau, 1.0 / r));
    s.log_Upsilon3 = s.rho * lm1 - 0.5 * std::log(r) - lg_rho - s.rho * lw - s.rho / r * lt
        - 0.5 * (r - 1.0) * std::log(2.0 * M_PI);
    s.Upsilon4 = std::pow(s.m1, r) / (std::pow(r, r) * std::pow(s.w_scale, r) * s.tau);
    s.Upsilon5 = (r - 1.0) / r;
    s.T3 = {1.0, 1.0 - s.Upsilon5, 1.0 + s.rho / r};
    return s;
}

RisSnrModel::RisSnrModel(const UowcLinkParams& p) : params_(p), stats_(gamma_approx(p)) {}

double RisSnrModel::pdf(double gamma) const
{
    require_domain(gamma > 0.0, "ris_snr_pdf: gamma must be > 0");
    const RisCascadeStats& s = stats_;
    const double l = s.log_Upsilon1 + (s.rho / s.r - 1.0) * std::log(gamma) - s.Upsilon2 * std::pow(gamma, 1.0 / s.r);
    return std::exp(l);
}

double RisSnrModel::cdf(double gamma, CdfRoute route) const
{
    require_domain(gamma >= 0.0, "ris_snr_cdf: gamma must be >= 0");
    if (gamma == 0.0)
        return 0.0;
    const RisCascadeStats& s = stats_;
    if (route == CdfRoute::meijer) {
        const double g = sf::meijer_g(s.cdf_spec(), s.Upsilon4 * gamma);
        return std::exp(s.log_Upsilon3 + s.rho / s.r * std::log(gamma)) * g;
    }
    return sf::gamma_p(s.rho, s.Upsilon2 * std::pow(gamma, 1.0 / s.r));
}

double RisSnrModel::ccdf(double gamma) const
{
    require_domain(gamma >= 0.0, "ris_snr_ccdf: gamma must be >= 0");
    if (gamma == 0.0)
        return 1.0;
    const RisCascadeStats& s = stats_;
    return sf::gamma_q(s.rho, s.Upsilon2 * std::pow(gamma, 1.0 / s.r));
}

double RisSnrModel::cdf_asymptotic(double gamma) const
{
    require_domain(gamma >= 0.0, "ris_snr_cdf_asymptotic: gamma must be >= 0");
    if (gamma == 0.0)
        return 0.0;
    const RisCascadeStats& s = stats_;
    const std::vector<double> b = s.cdf_lower();
    const double a = 1.0 - s.rho / s.r;
    const double lx = std::log(s.Upsilon4 * gamma);
    double total = 0.0;
    // Leading residue of each m-group pole, b_k2 = 1 - T3_k2.
    for (int k2 = 0; k2 < s.r; ++k2) {
        const double bk = 1.0 - s.T3[k2];
        double l = s.log_Upsilon3 + s.rho / s.r * std::log(gamma) + bk * lx;
        int sign = 1;
        auto factor = [&](double arg, int power) {
            if (sf::is_nonpositive_integer(arg))
                throw PoleError("ris_snr_cdf_asymptotic: gamma argument at a pole");
            const sf::SignedLog g = sf::ln_gamma_signed(arg);
            l += power * g.log_abs;
            sign *= g.sign;
        };
        for (int j = 0; j < s.r; ++j)
            if (j != k2)
                factor(b[j] - bk, 1);
        factor(1.0 - a + bk, 1);
        factor(1.0 - b[s.r] + bk, -1);
        total += sign * std::exp(l);
    }
    return total;
}

double ris_snr_pdf(double gamma, const UowcLinkParams& p)
{
    return RisSnrModel(p).pdf(gamma);
}

double ris_snr_cdf(double gamma, const UowcLinkParams& p, CdfRoute route)
{
    return RisSnrModel(p).cdf(gamma, route);
}

double ris_snr_ccdf(double gamma, const UowcLinkParams& p)
{
    return RisSnrModel(p).ccdf(gamma);
}

double ris_snr_cdf_asymptotic(double gamma, const UowcLinkParams& p)
{
    return RisSnrModel(p).cdf_asymptotic(gamma);
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

MeggParams parse_tuple(const std::string& text, const std::string& where)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (t.empty() || used != t.size())
            throw ConfigError(where + ": '" + t + "' is not a number");
        v.push_back(d);
    }
    if (v.size() != 5)
        throw ConfigError(where + ": expected 5 values (w, lambda, a, b, c)");
    MeggParams m;
    m.w = v[0];
    m.lambda = v[1];
    m.a = v[2];
    m.b = v[3];
    m.c = v[4];
    try {
        m.validate();
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return m;
}

} // namespace

TurbulenceRegistry parse_turbulence_registry(const std::string& text)
{
    TurbulenceRegistry reg;
    std::stringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = "turbulence registry line " + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": missing '='");
        const std::string name = trim(line.substr(0, eq));
        if (name.empty())
            throw ConfigError(where + ": empty name");
        if (reg.count(name))
            throw ConfigError(where + ": duplicate entry '" + name + "'");
        const std::string rhs = line.substr(eq + 1);
        TurbulenceEntry e;
        const auto semi = rhs.find(';');
        if (semi == std::string::npos) {
            e.hop1 = e.hop2 = parse_tuple(rhs, where);
        } else {
            e.hop1 = parse_tuple(rhs.substr(0, semi), where);
            e.hop2 = parse_tuple(rhs.substr(semi + 1), where);
        }
        reg.emplace(name, e);
    }
    return reg;
}

TurbulenceRegistry load_turbulence_registry(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open turbulence registry '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_turbulence_registry(ss.str());
}

} // namespace uwsec
