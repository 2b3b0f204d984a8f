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
#include "uwsec/specfun/bessel.hpp"

#include <cmath>

#ifdef UWSEC_HAVE_BOOST
#include <boost/math/special_functions/bessel.hpp>
#endif

using namespace uwsec::specfun;
using doctest::Approx;

TEST_CASE("modified Bessel function of the first kind")
{
    CHECK(bessel_i(0, 1) == Approx(1.2660658777520083).epsilon(1e-14));
    CHECK(bessel_i(1, 2) == Approx(1.5906368546373291).epsilon(1e-14));
    CHECK(bessel_i(0.5, 3.3) == Approx(5.9461201924995011).epsilon(1e-14));
    CHECK(bessel_i(1.5, 2.0) == Approx(1.0994731886331096755).epsilon(1e-14));
    CHECK(bessel_i(-0.4, 0.7) == Approx(1.2386901802207963).epsilon(1e-13));
    CHECK(bessel_i(2.5, 40) == Approx(13761967080749733.0).epsilon(1e-13));
    CHECK(log_bessel_i(1, 500) == Approx(495.97300666626834).epsilon(1e-14));
    CHECK(log_bessel_i(2.5, 40) == Approx(37.160685173648419).epsilon(1e-14));
    CHECK(bessel_i_scaled(1, 500) == Approx(std::exp(495.97300666626834 - 500.0)).epsilon(1e-12));
    // Half-integer closed form.
    for (double x : {0.1, 1.0, 8.0})
        CHECK(bessel_i(0.5, x) == Approx(std::sqrt(2.0 / (M_PI * x)) * std::sinh(x)).epsilon(1e-13));
    // Integer order -1 equals order 1.
    CHECK(bessel_i(-1, 2.3) == Approx(bessel_i(1, 2.3)).epsilon(1e-14));
}

TEST_CASE("Bessel errors")
{
    CHECK_THROWS_AS(bessel_i(1, -1.0), uwsec::DomainError);
    CHECK_THROWS_AS(bessel_i(0, 800.0), uwsec::OverflowError);
    CHECK(std::isfinite(log_bessel_i(0, 800.0)));
    CHECK(bessel_i(0, 0.0) == 1.0);
    CHECK(bessel_i(2, 0.0) == 0.0);
}

TEST_CASE("truncated power series")
{
    // Values from a 40-digit evaluation of the same truncated sum.
    CHECK(bessel_i_truncated(1, 2, 20) == Approx(1.5903289570541116).epsilon(1e-14));
    CHECK(bessel_i_truncated(1, 2, 40) == Approx(1.5905598237891594).epsilon(1e-14));
    CHECK(bessel_i_truncated(0.5, 3, 20) == Approx(4.6089638043872608).epsilon(1e-14));

    // The relative gap to the exact function shrinks roughly 4x per
    // doubling of p.
    const double exact = bessel_i(1, 2);
    double prev = 0.0;
    for (long p : {20L, 40L, 80L, 160L}) {
        const double gap = std::abs(bessel_i_truncated(1, 2, p) - exact) / exact;
        if (prev > 0.0) {
            CHECK(prev / gap > 3.5);
            CHECK(prev / gap < 4.5);
        }
        prev = gap;
    }
    CHECK(std::abs(bessel_i_truncated(1, 2, 10000) - exact) / exact < 1e-8);

    // Explicit sum with V(k,p,v) = Gamma(p+k) p^(1-2k) / (k! Gamma(p-k+1) Gamma(v+k+1)).
    {
        const double v = 1.5, x = 0.5;
        const int p = 5;
        double want = 0.0;
        for (int k = 0; k <= p; ++k)
            want += std::tgamma(p + k) * std::pow(p, 1.0 - 2.0 * k)
                / (std::tgamma(k + 1.0) * std::tgamma(p - k + 1.0) * std::tgamma(v + k + 1.0)) * std::pow(x / 2.0, v + 2.0 * k);
        CHECK(bessel_i_truncated(v, x, p) == Approx(want).epsilon(1e-14));
    }
    CHECK(bessel_i_truncated(0, 0, 10) == 1.0);
    CHECK_THROWS_AS(bessel_i_truncated(1, 1, 0), uwsec::DomainError);

    CHECK(bessel_truncation_factor(0, 20) == 1.0);
    CHECK(bessel_truncation_factor(1, 20) == 1.0);
    CHECK(bessel_truncation_factor(2, 20) == Approx(1.0 - 1.0 / 400.0));
    CHECK(bessel_truncation_factor(21, 20) == 0.0);
}

#ifdef UWSEC_HAVE_BOOST
TEST_CASE("Bessel I agrees with Boost.Math")
{
    for (double v : {0.0, 0.3, 1.0, 2.75, 9.0})
        for (double x : {0.01, 0.5, 3.0, 20.0, 90.0})
            CHECK(bessel_i(v, x) == Approx(boost::math::cyl_bessel_i(v, x)).epsilon(1e-12));
}
#endif
