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

#ifndef UWSEC_SPECFUN_MEIJER_G_INTERNAL_HPP
#define UWSEC_SPECFUN_MEIJER_G_INTERNAL_HPP

#include "uwsec/specfun/meijer_g.hpp"

#include <complex>
#include <vector>

namespace uwsec::specfun::detail {

bool near_integer(double d, double tol);

// Groups of lower m-group parameters whose poles coincide (differences within
// tol of an integer). Singletons are omitted.
std::vector<std::vector<int>> coincident_groups(const std::vector<double>& b, int m, double tol);

// Copy of spec with coincident lower parameters split by sign * index * delta.
MeijerGSpec split_coincident(const MeijerGSpec& spec, const std::vector<std::vector<int>>& groups,
                             double delta);

// (1/2 pi i) times the integral of phi(s) x^s around a circle of radius r about s0.
std::complex<double> circle_residue(const MeijerGSpec& spec, double log_x, double s0, double r,
                                    int nodes = 48);

// Pole locations of the two gamma groups inside [lo, hi].
std::vector<double> lower_pole_locations(const MeijerGSpec& spec, double lo, double hi);
std::vector<double> upper_pole_locations(const MeijerGSpec& spec, double lo, double hi);

// Distance from s to the nearest pole of either group, ignoring poles within
// `same` of s itself.
double distance_to_other_poles(const MeijerGSpec& spec, double s, double same);

} // namespace uwsec::specfun::detail

#endif
