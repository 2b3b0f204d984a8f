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

#ifndef UWSEC_SPECFUN_MEIJER_G_HPP
#define UWSEC_SPECFUN_MEIJER_G_HPP

#include <complex>
#include <string>
#include <vector>

namespace uwsec::specfun {

// G^{m,n}_{p,q}[x | a; b] with the Mellin-Barnes kernel
//   phi(s) = prod_{j<m} Gamma(b_j - s) prod_{j<n} Gamma(1 - a_j + s)
//          / (prod_{j>=m} Gamma(1 - b_j + s) prod_{j>=n} Gamma(a_j - s))
// and G(x) = (1/2 pi i) int_L phi(s) x^s ds, where L separates the poles of
// the first product (to its right) from those of the second (to its left).
struct MeijerGSpec {
    int m = 0;
    int n = 0;
    std::vector<double> a;
    std::vector<double> b;

    int p() const { return static_cast<int>(a.size()); }
    int q() const { return static_cast<int>(b.size()); }

    // Throws SpecError for invalid orders.
    void validate() const;
    // Throws SpecError when an upper pole (k < n) coincides with a lower one
    // (j < m), i.e. a_k - b_j is a positive integer: no separating contour exists.
    void check_existence() const;
    std::string describe() const;
};

enum class LogCaseStrategy { perturb, log_series };
enum class GBackend { automatic, residue, contour };

struct EvalOptions {
    double target_rel_tol = 1e-8;
    int max_series_terms = 4000;
    // Upper bound on adaptive panels for the contour quadrature.
    int contour_resolution = 4000;
    LogCaseStrategy log_case_strategy = LogCaseStrategy::perturb;
    GBackend backend = GBackend::automatic;
    // Split distance for integer-coincident poles under LogCaseStrategy::perturb.
    double perturbation = 1e-3;
};

struct GResult {
    double value = 0.0;
    double abs_error = 0.0;
    GBackend backend_used = GBackend::automatic;
    bool converged = false;
    bool log_case = false;
    int terms = 0;

    double rel_error() const;
};

// Full result with error estimate; never throws NonConvergence.
GResult meijer_g_eval(const MeijerGSpec& spec, double x, const EvalOptions& opts = {});

// Value only; throws NonConvergence when the tolerance is not met.
double meijer_g(const MeijerGSpec& spec, double x, const EvalOptions& opts = {});

// log phi(s) for the kernel above (imaginary part modulo 2 pi).
std::complex<double> meijer_log_kernel(const MeijerGSpec& spec, std::complex<double> s);

// G^{m,n}_{q,p}[1/x | 1-b; 1-a], equal to G^{m,n}_{p,q}[x | a; b] with swapped roles.
MeijerGSpec inverted(const MeijerGSpec& spec);

// Leading term of each lower-pole residue series: sum_{h<m} c_h x^{b_h}.
// This is the small-argument behaviour; coincident lower poles are split by
// the perturbation policy.
double meijer_g_small_x_leading(const MeijerGSpec& spec, double x,
                                const EvalOptions& opts = {});

// Leading algebraic terms for large argument: sum_{k<n} d_k x^{a_k - 1}.
double meijer_g_large_x_leading(const MeijerGSpec& spec, double x,
                                const EvalOptions& opts = {});

// Panel of a bivariate G: the kernel phi of a univariate spec.
struct BivariateGSpec {
    MeijerGSpec outer;
    MeijerGSpec inner1;
    MeijerGSpec inner2;

    void validate() const;
};

// G(x, y) = (1/(2 pi i)^2) int int phi_outer(s + t) phi_1(s) phi_2(t) x^s y^t ds dt
// evaluated by adaptive quadrature on two vertical lines.
GResult bivariate_meijer_g_eval(const BivariateGSpec& spec, double x, double y,
                                const EvalOptions& opts = {});
double bivariate_meijer_g(const BivariateGSpec& spec, double x, double y,
                          const EvalOptions& opts = {});

// Bivariate spec for the triple-product Mellin integral
//   int_0^inf x^(alpha-1) G1(c1 x) G2(c2 x) G3(c3 x) dx = c1^-alpha * G(c2/c1, c3/c1).
BivariateGSpec triple_product_spec(const MeijerGSpec& g1, double alpha,
                                   const MeijerGSpec& g2, const MeijerGSpec& g3);

} // namespace uwsec::specfun

#endif
