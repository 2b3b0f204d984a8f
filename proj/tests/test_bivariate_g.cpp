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

#include "doctest.h"

#include "uwsec/errors.hpp"
#include "uwsec/specfun/gamma.hpp"
#include "uwsec/specfun/meijer_g.hpp"
#include "uwsec/specfun/quadrature.hpp"

#include <cmath>

using namespace uwsec::specfun;
using doctest::Approx;

TEST_CASE("trivial outer kernel factorizes")
{
    const BivariateGSpec s{{0, 0, {}, {}}, {1, 0, {}, {0}}, {1, 1, {0}, {0}}};
    for (auto [x, y] : {std::pair{0.5, 2.0}, std::pair{3.0, 0.2}}) {
        const GResult r = bivariate_meijer_g_eval(s, x, y);
        CHECK(r.converged);
        CHECK(r.value == Approx(std::exp(-x) / (1.0 + y)).epsilon(1e-8));
    }
}

TEST_CASE("degenerate inner panel reduces to a univariate G")
{
    const MeijerGSpec g{1, 2, {-0.5, 1}, {4, 0, -1.5}};
    const BivariateGSpec s{{0, 0, {}, {}}, g, {1, 0, {}, {0}}};
    for (double x : {0.4, 2.0})
        CHECK(bivariate_meijer_g(s, x, 1.0) == Approx(meijer_g(g, x) * std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("small panels against brute-force double contour")
{
    // Outer G^{1,1}_{1,1}, inners G^{1,0}_{0,1}: the kernel is
    // Gamma(-(s+t)) Gamma(1+s+t) Gamma(-s) Gamma(-t). Sum a fixed midpoint rule on a
    // large square with the same contour abscissae.
    const BivariateGSpec s{{1, 1, {0}, {0}}, {1, 0, {}, {0}}, {1, 0, {}, {0}}};
    const double x = 0.7, y = 1.6, c1 = -0.3, c2 = -0.3;
    const double h = 0.05, T = 30.0;
    double acc = 0.0;
    for (double t1 = -T + h / 2; t1 < T; t1 += h) {
        for (double t2 = -T + h / 2; t2 < T; t2 += h) {
            const std::complex<double> u(c1, t1), v(c2, t2);
            const std::complex<double> l = meijer_log_kernel(s.outer, u + v) + meijer_log_kernel(s.inner1, u)
                + meijer_log_kernel(s.inner2, v) + u * std::log(x) + v * std::log(y);
            acc += std::exp(l).real();
        }
    }
    const double brute = acc * h * h / (4.0 * M_PI * M_PI);
    CHECK(bivariate_meijer_g(s, x, y) == Approx(brute).epsilon(1e-6));
}

TEST_CASE("continuity in x")
{
    const BivariateGSpec s{{1, 1, {0}, {0}}, {1, 0, {}, {0}}, {1, 0, {}, {0}}};
    double prev = bivariate_meijer_g(s, 0.5, 1.0);
    const double step = 0.05;
    double max_jump = 0.0;
    for (double x = 0.5 + step; x <= 1.5 + 1e-12; x += step) {
        const double v = bivariate_meijer_g(s, x, 1.0);
        max_jump = std::max(max_jump, std::abs(v - prev));
        prev = v;
    }
    // Differences must scale with the step, not jump.
    CHECK(max_jump < 0.05);
}

TEST_CASE("triple product against direct quadrature")
{
    struct Case {
        double alpha, c1, c2, c3;
    };
    const MeijerGSpec e{1, 0, {}, {0}};
    const MeijerGSpec r{1, 1, {0}, {0}};
    const double psi = 1.5, b = 3.0;
    const MeijerGSpec cdf{1, 2, {1 - psi, 1}, {b, 0, -psi}};
    for (const Case c : {Case{1.7, 1.3, 0.6, 2.2}, Case{0.6, 0.4, 2.0, 1.0}}) {
        // exp * exp * 1/(1+x)
        auto f = [&](double x) { return std::pow(x, c.alpha - 1) * std::exp(-(c.c1 + c.c2) * x) / (1 + c.c3 * x); };
        const double want = integrate_to_infinity(f, 0.0).value;
        const BivariateGSpec s = triple_product_spec(e, c.alpha, e, r);
        CHECK(std::pow(c.c1, -c.alpha) * bivariate_meijer_g(s, c.c2 / c.c1, c.c3 / c.c1) == Approx(want).epsilon(1e-7));
    }
    // The shape used by the cross term of the secrecy outage: an RF CDF
    // panel, a decaying factor and the exponential.
    const double alpha = 1.2, c1 = 0.8, c2 = 1.5, c3 = 0.7;
    auto g = [&](double x) {
        const double y = c1 * x;
        const double gcdf = (lower_incomplete_gamma(b, y) - std::pow(y, -psi) * lower_incomplete_gamma(b + psi, y)) / psi;
        return std::pow(x, alpha - 1) * gcdf * std::exp(-c2 * x) / (1 + c3 * x);
    };
    const double want = integrate_to_infinity(g, 0.0).value;
    const BivariateGSpec s = triple_product_spec(cdf, alpha, e, r);
    CHECK(std::pow(c1, -alpha) * bivariate_meijer_g(s, c2 / c1, c3 / c1) == Approx(want).epsilon(1e-6));
}

TEST_CASE("bivariate validation")
{
    const BivariateGSpec bad{{0, 0, {}, {}}, {1, 1, {2.0}, {0.0}}, {1, 0, {}, {0}}};
    CHECK_THROWS_AS(bivariate_meijer_g(bad, 1.0, 1.0), uwsec::SpecError);
    const BivariateGSpec ok{{0, 0, {}, {}}, {1, 0, {}, {0}}, {1, 0, {}, {0}}};
    CHECK_THROWS_AS(bivariate_meijer_g(ok, -1.0, 1.0), uwsec::DomainError);
    // Strips that cannot be satisfied together: Re(s) < -3 from one inner panel
    // but the outer panel needs Re(s+t) > 1 with Re(t) < 0.
    const BivariateGSpec infeasible{{0, 1, {-2.0}, {}}, {1, 0, {}, {-3.0}}, {1, 0, {}, {0}}};
    CHECK_THROWS_AS(bivariate_meijer_g(infeasible, 1.0, 1.0), uwsec::SpecError);
}
