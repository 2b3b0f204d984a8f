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

#include "uwsec/dual_hop.hpp"

#include "uwsec/errors.hpp"

namespace uwsec {

double DualHopModel::cdf(double gamma) const
{
    require_domain(gamma >= 0.0, "eq_cdf: gamma must be >= 0");
    // F_R + F_D - F_R F_D near zero, 1 - (1 - F_R)(1 - F_D) otherwise, so
    // that neither tail loses digits to cancellation.
    const double fr = rf_.cdf(gamma), fd = uowc_.cdf(gamma);
    if (fr < 0.5 && fd < 0.5)
        return fr + fd - fr * fd;
    return 1.0 - rf_.ccdf(gamma) * uowc_.ccdf(gamma);
}

double DualHopModel::ccdf(double gamma) const
{
    require_domain(gamma >= 0.0, "eq_ccdf: gamma must be >= 0");
    return rf_.ccdf(gamma) * uowc_.ccdf(gamma);
}

double DualHopModel::cdf_asymptotic(double gamma) const
{
    return rf_.cdf_asymptotic(gamma) + uowc_.cdf_asymptotic(gamma);
}

double eq_cdf(double gamma, const DualHopParams& p)
{
    return DualHopModel(p).cdf(gamma);
}

double eq_ccdf(double gamma, const DualHopParams& p)
{
    return DualHopModel(p).ccdf(gamma);
}

double eq_cdf_asymptotic(double gamma, const DualHopParams& p)
{
    return DualHopModel(p).cdf_asymptotic(gamma);
}

} // namespace uwsec
