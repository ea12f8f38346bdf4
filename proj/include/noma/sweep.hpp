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

#include "noma/config.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace noma::cli {

// One CSV line. Engine values that were not requested stay empty.
struct SweepRow {
    std::optional<double> variable;
    std::string scenario;
    User user = User::near;
    Scheme scheme = Scheme::noma;
    std::optional<double> analytic_p;
    std::optional<double> mc_p;
    std::optional<double> mc_se;
    std::optional<double> noma_gain;
};

// "direction-domain", with "/tag" appended for a tagged variant.
std::string scenario_tag(Direction d, Domain m, const std::string& variant_tag = {});

// Evaluates every (variant, point, output) of cfg.sweep. Rows come back in
// variant, point, output order whatever order the workers finish in.
std::vector<SweepRow> run_sweep(const Config& cfg);

// Both users and both schemes for cfg.scenario at its own operating point.
std::vector<SweepRow> run_gain(const Config& cfg);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct ValidateRow {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double analytic_p = 0.0;
    double mc_p = 0.0;
    double mc_se = 0.0;
    double abs_diff = 0.0;
    bool pass = true;
};

// Near-user uplink series against Monte Carlo on the (alpha1, alpha2) grid.
// Grid values are scaled by the SINR threshold of the target rate; grid
// point i draws from seed base_seed + i.
std::vector<ValidateRow> run_validate(const Config& cfg);

void write_csv(std::ostream& os, const std::vector<ValidateRow>& rows);

} // namespace noma::cli
