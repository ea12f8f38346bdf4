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

#include "noma/outage.hpp"

#include <cstdint>

namespace noma::mc {

struct McConfig {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t base_seed = 0x5EED;
    int n_workers = 1;

    void validate() const;
};

struct McEstimate {
    OutageResult result; // method == monte_carlo
    double std_error = 0.0;
    std::uint64_t outages = 0;
    std::uint64_t samples = 0;
};

// Spectral efficiency of `user` for one pair of fading draws. The fading
// gains multiply the large-scale gains of `link`.
double spectral_efficiency(const LinkBudget& link, User user, double fade_near, double fade_far);

// Draws independent fading per user per sample and counts C < R.
// Sample i uses the stream sample_stream(base_seed, i), so the estimate is
// bit-identical for every worker count.
McEstimate simulate_outage(const LinkBudget& link, User user, const McConfig& cfg);
McEstimate simulate_outage(const LinkScenario& scn, User user, const McConfig& cfg);

// Single-threaded reference of the same estimator.
McEstimate simulate_outage_serial(const LinkBudget& link, User user, const McConfig& cfg);

// P{y < alpha1 x + alpha2} sampled directly from the two fading laws.
McEstimate simulate_uplink_alphas(UplinkAlphas alphas, const fading::FadingSpec& near,
                                  const fading::FadingSpec& far, const McConfig& cfg);

McEstimate make_estimate(std::uint64_t outages, std::uint64_t samples);

} // namespace noma::mc
