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

#ifndef UWSEC_DUAL_HOP_HPP
#define UWSEC_DUAL_HOP_HPP

#include "uwsec/rf_channel.hpp"
#include "uwsec/uowc_channel.hpp"

namespace uwsec {

// Decode-and-forward RF (S->R) then RIS-aided optical (R->I->D) hop,
// end-to-end SNR approximated by min(gamma_R, gamma_D).
struct DualHopParams {
    RfLinkParams rf;
    UowcLinkParams uowc;
};

class DualHopModel {
public:
    explicit DualHopModel(const DualHopParams& p) : rf_(p.rf), uowc_(p.uowc) {}
    DualHopModel(const RfSnrModel& rf, const RisSnrModel& uowc) : rf_(rf), uowc_(uowc) {}

    const RfSnrModel& rf() const { return rf_; }
    const RisSnrModel& uowc() const { return uowc_; }

    double cdf(double gamma) const;
    double ccdf(double gamma) const;
    double cdf_asymptotic(double gamma) const;

private:
    RfSnrModel rf_;
    RisSnrModel uowc_;
};

double eq_cdf(double gamma, const DualHopParams& p);
double eq_ccdf(double gamma, const DualHopParams& p);
double eq_cdf_asymptotic(double gamma, const DualHopParams& p);

} // namespace uwsec

#endif
