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

#include "noma/channel.hpp"

#include "noma/errors.hpp"

#include <cmath>
#include <numbers>

namespace noma::channel {

void EnvironmentParams::validate() const {
    if (!(carrier_hz > 0.0)) throw ContractError("environment: carrier frequency must be positive");
    if (!(speed_of_light > 0.0)) throw ContractError("environment: speed of light must be positive");
    if (!(alpha_t >= 2.0)) throw ContractError("environment: terrestrial exponent must be >= 2");
    if (!(eta_nlos_db >= eta_los_db)) throw ContractError("environment: eta_nlos must be >= eta_los");
    if (!(los_a > 0.0) || !(los_b > 0.0)) throw ContractError("environment: LOS constants must be positive");
}

double free_space_constant_db(const EnvironmentParams& env) {
    return 20.0 * std::log10(4.0 * std::numbers::pi * env.carrier_hz / env.speed_of_light);
}

double distance(double altitude_m, double radius_m) { return std::hypot(altitude_m, radius_m); }

double terrestrial_path_loss_db(const EnvironmentParams& env, double distance_m) {
    if (!std::isfinite(distance_m) || distance_m <= 0.0)
        throw DomainError("terrestrial_path_loss_db: distance must be positive");
    return 10.0 * env.alpha_t * std::log10(distance_m) + free_space_constant_db(env) + env.eta_t_db;
}

double elevation_deg(double altitude_m, double radius_m) {
    if (!(altitude_m >= 0.0) || !(radius_m >= 0.0))
        throw DomainError("elevation: altitude and radius must be nonnegative");
    if (altitude_m == 0.0 && radius_m == 0.0) throw DomainError("elevation: undefined at the origin");
    return std::atan2(altitude_m, radius_m) * 180.0 / std::numbers::pi;
}

double p_los(const EnvironmentParams& env, double altitude_m, double radius_m) {
    const double theta = elevation_deg(altitude_m, radius_m);
    return 1.0 / (1.0 + env.los_a * std::exp(-env.los_b * (theta - env.los_a)));
}

double aerial_path_loss_db(const EnvironmentParams& env, double altitude_m, double radius_m) {
    const double d = distance(altitude_m, radius_m);
    if (!(d > 0.0)) throw DomainError("aerial_path_loss_db: degenerate geometry");
    const double a = env.eta_los_db - env.eta_nlos_db;
    const double b = free_space_constant_db(env) + env.eta_nlos_db;
    return 20.0 * std::log10(d) + a * p_los(env, altitude_m, radius_m) + b;
}

double channel_gain(double loss_db) {
    if (!std::isfinite(loss_db)) throw DomainError("channel_gain: loss must be finite");
    return std::pow(10.0, -0.1 * loss_db);
}

} // namespace noma::channel
