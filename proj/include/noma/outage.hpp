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

#include "noma/channel.hpp"
#include "noma/fading.hpp"
#include "noma/specfun.hpp"

#include <string_view>

namespace noma {

enum class Direction { uplink, downlink };
enum class Domain { terrestrial, aerial };
enum class Scheme { noma, oma };
// User 1 is the near (strong) user, user 2 the far one.
enum class User { near = 1, far = 2 };

std::string_view to_string(Direction d);
std::string_view to_string(Domain d);
std::string_view to_string(Scheme s);
std::string_view to_string(User u);

// Horizontal distances of the two users and the base-station altitude.
// Terrestrial links ignore the altitude.
struct Geometry {
    double altitude_m = 0.0;
    double r_near_m = 10.0;
    double r_far_m = 100.0;
};

// Transmit powers normalized to the receiver noise power.
struct Powers {
    double total = 1.0;      // downlink aggregate P
    double split_near = 0.1; // downlink a1; the far user gets a2 = 1 - a1
    double near = 1.0;       // uplink P1
    double far = 1.0;        // uplink P2

    double split_far() const { return 1.0 - split_near; }
};

struct LinkScenario {
    Direction direction = Direction::downlink;
    Domain domain = Domain::aerial;
    Scheme scheme = Scheme::noma;
    Geometry geometry;
    Powers powers;
    double target_rate = 1.0; // bps/Hz
    fading::FadingSpec fading_near = fading::FadingSpec::rician(10.0, 1.0);
    fading::FadingSpec fading_far = fading::FadingSpec::rician(10.0, 1.0);
    channel::EnvironmentParams env;

    void validate() const;
};

// A scenario with its large-scale gains resolved to linear numbers.
struct LinkBudget {
    Direction direction = Direction::downlink;
    Scheme scheme = Scheme::noma;
    double gain_near = 1.0;
    double gain_far = 1.0;
    Powers powers;
    double target_rate = 1.0;
    fading::FadingSpec fading_near;
    fading::FadingSpec fading_far;

    void validate() const;
    const fading::FadingSpec& fading(User u) const { return u == User::near ? fading_near : fading_far; }
    double gain(User u) const { return u == User::near ? gain_near : gain_far; }
};

double large_scale_gain(const LinkScenario& scn, User user);
LinkBudget link_budget(const LinkScenario& scn);
// Skips scenario validation (ordering of the two radii in particular).
LinkBudget link_budget_unchecked(const LinkScenario& scn);

enum class Method { closed_form, series, quadrature, monte_carlo };
std::string_view to_string(Method m);

struct OutageResult {
    double probability = 0.0;
    Method method = Method::closed_form;
    int terms_used = 0;
    double truncation_bound = 0.0;
    // Downlink far user with a2 <= (2^R - 1) a1: the SINR can never reach
    // the target, outage is 1.
    bool infeasible = false;
};

// 2^R - 1
double sinr_threshold(double target_rate);

// Near-user uplink NOMA reduces to P{y < alpha1 x + alpha2}, y the near and
// x the far fading gain.
struct UplinkAlphas {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};
UplinkAlphas uplink_alphas(double g1, double g2, double p1, double p2, double target_rate);

OutageResult oma_outage(const LinkBudget& link, User user);
OutageResult dl_noma_outage(const LinkBudget& link, User user);
OutageResult ul_noma_outage_far(const LinkBudget& link);

OutageResult ul_noma_outage_near_terrestrial(double g1, double g2, double p1, double p2,
                                             double target_rate, double lambda1, double lambda2);
OutageResult ul_near_terrestrial(UplinkAlphas alphas, double lambda1, double lambda2);

// Poisson(K1) x Poisson(K2) weighted double series over Erlang components.
// Throws TruncationError if either axis needs more than ctl.max_terms terms.
OutageResult ul_noma_outage_near_aerial(double g1, double g2, double p1, double p2, double target_rate,
                                        const fading::FadingSpec& near, const fading::FadingSpec& far,
                                        const specfun::SeriesControl& ctl = {});
OutageResult ul_near_aerial(UplinkAlphas alphas, const fading::Rician& near, const fading::Rician& far,
                            const specfun::SeriesControl& ctl = {});

// Same double series, but each bracket assembled term by term from
// specfun::log_tricomi_u. Slower; kept as a cross-check of the recurrence.
OutageResult ul_near_aerial_tricomi(UplinkAlphas alphas, const fading::Rician& near,
                                    const fading::Rician& far, const specfun::SeriesControl& ctl = {});

// int_0^inf F_near(alpha1 x + alpha2) f_far(x) dx, any fading laws.
OutageResult ul_near_quadrature(UplinkAlphas alphas, const fading::FadingSpec& near,
                                const fading::FadingSpec& far);

OutageResult ul_noma_outage_near(const LinkBudget& link, const specfun::SeriesControl& ctl = {});

// Dispatch on direction and scheme.
OutageResult outage(const LinkBudget& link, User user, const specfun::SeriesControl& ctl = {});
OutageResult outage(const LinkScenario& scn, User user, const specfun::SeriesControl& ctl = {});

// OMA minus NOMA outage; positive favours NOMA.
double noma_gain(const OutageResult& oma, const OutageResult& noma);

} // namespace noma
