// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "noma/mc_oracle.hpp"
#include "noma/outage.hpp"

namespace noma::placement {

// N users uniform on a disk of radius R: f(r) = 2r/R^2, F(r) = r^2/R^2.
// The near user sits at the minimum radius, the far user at the maximum.
struct PlacementModel {
    int n_users = 100;
    double cell_radius_m = 500.0;

    // Averaging needs at least two users; the densities alone accept N = 1.
    void validate() const;
};

double pdf_rmin(const PlacementModel& pm, double r);
double pdf_rmax(const PlacementModel& pm, double r);
double cdf_rmin(const PlacementModel& pm, double r);
double cdf_rmax(const PlacementModel& pm, double r);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Smallest interval outside of which each density carries less than `tail`.
Interval support_rmin(const PlacementModel& pm, double tail);
Interval support_rmax(const PlacementModel& pm, double tail);

struct QuadControl {
    int nodes_1d = 64;
    int nodes_2d = 128;    // per axis, near-user uplink NOMA
    double tail = 1e-15;   // density mass dropped at each support end
    double max_error = 1e-6;
    int n_workers = 1;

    void validate() const;
};

struct PlacementResult {
    double probability = 0.0;
    double error_estimate = 0.0; // |I(n) - I(2n)| plus the dropped tail mass
};

// Outage of `user` averaged over the order-statistic radii. Single-radius
// outages are 1-D integrals; the near-user uplink NOMA outage depends on both
// radii and is integrated against f(r1) f(r2) (ranked radii treated as
// independent). Gauss-Legendre with n and 2n nodes; the 2n value is
// returned. Throws QuadratureError when the estimate exceeds max_error.
PlacementResult expected_outage(const PlacementModel& pm, const LinkScenario& tmpl, User user,
                                const QuadControl& quad = {}, const specfun::SeriesControl& series = {});

// Same quadrature evaluated on one thread.
PlacementResult expected_outage_serial(const PlacementModel& pm, const LinkScenario& tmpl, User user,
                                       const QuadControl& quad = {},
                                       const specfun::SeriesControl& series = {});

// Monte-Carlo reference that draws all N positions per snapshot, takes the
// ranked extremes, then draws fading. No independence approximation.
mc::McEstimate simulate_placement_outage(const PlacementModel& pm, const LinkScenario& tmpl, User user,
                                         const mc::McConfig& cfg);

} // namespace noma::placement
