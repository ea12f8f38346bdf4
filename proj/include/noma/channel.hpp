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

// Large-scale propagation for terrestrial and aerial base stations.
//
// Terrestrial:  L = 10 alpha log10(d) + 20 log10(4 pi fc / c) + eta
// Aerial:       L = 20 log10(d) + (eta_los - eta_nlos) P_los(h, r)
//                   + 20 log10(4 pi fc / c) + eta_nlos
// with P_los the elevation-angle sigmoid (angle in degrees).

namespace noma::channel {

inline constexpr double kSpeedOfLight = 2.998e8;

struct EnvironmentParams {
    double carrier_hz = 2.5e9;
    double speed_of_light = kSpeedOfLight;
    double alpha_t = 3.0;   // terrestrial path-loss exponent
    double eta_t_db = 1.0;  // terrestrial excess loss
    double eta_los_db = 1.6;
    double eta_nlos_db = 23.0;
    double los_a = 12.8;
    double los_b = 0.11;    // per degree

    void validate() const;
};

// 20 log10(4 pi fc / c)
double free_space_constant_db(const EnvironmentParams& env);

// sqrt(h^2 + r^2)
double distance(double altitude_m, double radius_m);

double terrestrial_path_loss_db(const EnvironmentParams& env, double distance_m);

// Elevation angle arctan(h / r) in degrees; h > 0 with r = 0 is overhead.
double elevation_deg(double altitude_m, double radius_m);

double p_los(const EnvironmentParams& env, double altitude_m, double radius_m);

double aerial_path_loss_db(const EnvironmentParams& env, double altitude_m, double radius_m);

double channel_gain(double loss_db);

} // namespace noma::channel
