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

#include "noma/mc_oracle.hpp"

#include "noma/errors.hpp"
#include "noma/rng.hpp"

#include <cmath>
#include <cstdint>

namespace noma::mc {
namespace {

template <class Body>
std::uint64_t count_parallel(std::uint64_t n, int workers, Body body) {
    std::uint64_t hits = 0;
    const auto total = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) reduction(+ : hits) num_threads(workers)
    for (std::int64_t i = 0; i < total; ++i) hits += body(static_cast<std::uint64_t>(i)) ? 1u : 0u;
    return hits;
}

template <class Body>
std::uint64_t count_serial(std::uint64_t n, Body body) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) hits += body(i) ? 1u : 0u;
    return hits;
}

auto link_sampler(const LinkBudget& link, User user, std::uint64_t seed) {
    return [&link, user, seed](std::uint64_t i) {
        auto rng = sample_stream(seed, i);
        const double fn = fading::sample(link.fading_near, rng);
        const double ff = fading::sample(link.fading_far, rng);
        return spectral_efficiency(link, user, fn, ff) < link.target_rate;
    };
}

} // namespace

void McConfig::validate() const {
    if (n_samples < 1) throw ContractError("McConfig: n_samples must be >= 1");
    if (n_workers < 1) throw ContractError("McConfig: n_workers must be >= 1");
}

McEstimate make_estimate(std::uint64_t outages, std::uint64_t samples) {
    McEstimate e;
    e.outages = outages;
    e.samples = samples;
    const double p = static_cast<double>(outages) / static_cast<double>(samples);
    e.result.probability = p;
    e.result.method = Method::monte_carlo;
    e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return e;
}

double spectral_efficiency(const LinkBudget& link, User user, double fade_near, double fade_far) {
    const double rx_near = link.gain_near * fade_near;
    const double rx_far = link.gain_far * fade_far;
    const Powers& p = link.powers;
    if (link.scheme == Scheme::oma) {
        const double power = link.direction == Direction::downlink ? p.total : (user == User::near ? p.near : p.far);
        return 0.5 * std::log2(1.0 + power * (user == User::near ? rx_near : rx_far));
    }
    if (link.direction == Direction::downlink) {
        if (user == User::near) return std::log2(1.0 + p.split_near * p.total * rx_near);
        return std::log2(1.0 + p.split_far() * p.total * rx_far / (p.split_near * p.total * rx_far + 1.0));
    }
    if (user == User::near) return std::log2(1.0 + p.near * rx_near / (p.far * rx_far + 1.0));
    return std::log2(1.0 + p.far * rx_far);
}

McEstimate simulate_outage(const LinkBudget& link, User user, const McConfig& cfg) {
    cfg.validate();
    link.validate();
    return make_estimate(count_parallel(cfg.n_samples, cfg.n_workers, link_sampler(link, user, cfg.base_seed)),
                         cfg.n_samples);
}

McEstimate simulate_outage(const LinkScenario& scn, User user, const McConfig& cfg) {
    return simulate_outage(link_budget(scn), user, cfg);
}

McEstimate simulate_outage_serial(const LinkBudget& link, User user, const McConfig& cfg) {
    cfg.validate();
    link.validate();
    return make_estimate(count_serial(cfg.n_samples, link_sampler(link, user, cfg.base_seed)), cfg.n_samples);
}

McEstimate simulate_uplink_alphas(UplinkAlphas alphas, const fading::FadingSpec& near,
                                  const fading::FadingSpec& far, const McConfig& cfg) {
    cfg.validate();
    auto body = [&](std::uint64_t i) {
        auto rng = sample_stream(cfg.base_seed, i);
        const double y = fading::sample(near, rng);
        const double x = fading::sample(far, rng);
        return y < alphas.alpha1 * x + alphas.alpha2;
    };
    return make_estimate(count_parallel(cfg.n_samples, cfg.n_workers, body), cfg.n_samples);
}

} // namespace noma::mc
