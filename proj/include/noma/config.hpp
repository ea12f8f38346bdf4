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

// JSON scenario files for the command-line harness. Field names carry their
// units; every field is optional and falls back to the defaults below.

#include "noma/channel.hpp"
#include "noma/mc_oracle.hpp"
#include "noma/outage.hpp"
#include "noma/placement.hpp"
#include "noma/specfun.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace noma::cli {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Engine { analytic, monte_carlo, both };
enum class Averaging { placement, fixed };
enum class SweepVariable { target_rate, altitude, power_split, user_power, rice_k };

std::string_view to_string(Engine e);
std::string_view to_string(Averaging a);
std::string_view to_string(SweepVariable v);
Engine parse_engine(std::string_view s);

// One link template in physical units. Terrestrial links use Rayleigh fading
// with rate rayleigh_lambda, aerial links Rician(rice_k, rician_omega), the
// same law for both users.
struct ScenarioConfig {
    Direction direction = Direction::downlink;
    Domain domain = Domain::aerial;
    Averaging averaging = Averaging::placement;
    double altitude_m = 1500.0;
    double r_near_m = 50.0;   // fixed averaging only
    double r_far_m = 450.0;   // fixed averaging only
    double total_power_w = 5.0;
    double power_split_near = 0.1;
    double user_power_near_w = 1.0;
    double user_power_far_w = 1.0;
    double target_rate_bps_hz = 1.0;
    double rice_k = 10.0;
    double rician_omega = 1.0;
    double rayleigh_lambda = 1.0;
    double noise_psd_w_per_hz = 1e-10;
    double bandwidth_hz = 1e6;

    double noise_power_w() const { return noise_psd_w_per_hz * bandwidth_hz; }
    bool operator==(const ScenarioConfig&) const = default;
};

struct OutputSpec {
    Scheme scheme = Scheme::noma;
    User user = User::near;
    std::optional<Direction> direction; // defaults to the template's
    std::optional<Domain> domain;
    bool operator==(const OutputSpec&) const = default;
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::target_rate;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;
    // Each variant is a tag plus overrides of scenario fields.
    std::vector<nlohmann::json> variants;
    std::vector<OutputSpec> outputs;
    bool operator==(const SweepSpec&) const = default;

    std::vector<double> points() const;
};

struct ValidateSpec {
    std::vector<double> alpha1{0.1, 0.25, 0.5, 1.0, 1.5, 2.0};
    std::vector<double> alpha2{0.1, 0.5, 1.0};
    double target_rate_bps_hz = 1.0;
    double rice_k_near = 10.0;
    double rice_k_far = 10.0;
    double omega_near = 1.0;
    double omega_far = 1.0;
    double abs_tol = 5e-3;
    double se_multiplier = 4.0;
    bool operator==(const ValidateSpec&) const = default;
};

struct Config {
    channel::EnvironmentParams env;
    placement::PlacementModel placement;
    specfun::SeriesControl series;
    placement::QuadControl quad;
    mc::McConfig mc;
    Engine engine = Engine::analytic;
    ScenarioConfig scenario;
    std::optional<SweepSpec> sweep;
    std::optional<ValidateSpec> validate;

    bool operator==(const Config& o) const;
};

Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);
nlohmann::json to_json(const Config& c);

ScenarioConfig parse_scenario(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioConfig& s);

// Apply a variant's overrides (every key except "tag") to a scenario.
ScenarioConfig apply_overrides(const ScenarioConfig& base, const nlohmann::json& overrides);
ScenarioConfig with_variable(ScenarioConfig s, SweepVariable v, double value);

// Physical scenario to normalized link: powers divided by the noise power.
LinkScenario make_link(const ScenarioConfig& s, const channel::EnvironmentParams& env, Scheme scheme);

} // namespace noma::cli
