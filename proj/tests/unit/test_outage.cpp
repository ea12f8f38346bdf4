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

#include "noma/errors.hpp"
#include "noma/mc_oracle.hpp"
#include "noma/outage.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace noma;
using fading::FadingSpec;

namespace {

LinkBudget budget(Direction d, Scheme s, const FadingSpec& f, double p = 5.0, double rate = 1.0) {
    LinkBudget b;
    b.direction = d;
    b.scheme = s;
    b.gain_near = 1.0;
    b.gain_far = 0.4;
    b.powers.total = p;
    b.powers.split_near = 0.2;
    b.powers.near = p;
    b.powers.far = p;
    b.target_rate = rate;
    b.fading_near = b.fading_far = f;
    return b;
}

const Direction kDirs[] = {Direction::downlink, Direction::uplink};
const Scheme kSchemes[] = {Scheme::noma, Scheme::oma};
const User kUsers[] = {User::near, User::far};

} // namespace

TEST_SUITE("outage") {

TEST_CASE("zero target rate gives zero outage everywhere") {
    for (const auto& f : {FadingSpec::rayleigh(1.0), FadingSpec::rician(10.0, 1.0)})
        for (Direction d : kDirs)
            for (Scheme s : kSchemes)
                for (User u : kUsers) CHECK(outage(budget(d, s, f, 5.0, 0.0), u).probability == 0.0);
}

TEST_CASE("OMA closed forms") {
    const LinkBudget b = budget(Direction::downlink, Scheme::oma, FadingSpec::rayleigh(1.0), 5.0, 1.0);
    // x* = (2^2 - 1)/(P g)
    CHECK(oma_outage(b, User::near).probability == doctest::Approx(1.0 - std::exp(-3.0 / 5.0)).epsilon(1e-14));
    CHECK(oma_outage(b, User::far).probability == doctest::Approx(1.0 - std::exp(-3.0 / 2.0)).epsilon(1e-14));
    const LinkBudget a = budget(Direction::uplink, Scheme::oma, FadingSpec::rician(10.0, 1.0), 5.0, 1.0);
    CHECK(oma_outage(a, User::far).probability == doctest::Approx(oracle::rician_cdf(10.0, 1.0, 1.5)).epsilon(1e-10));
    CHECK_THROWS_AS(oma_outage(budget(Direction::uplink, Scheme::noma, FadingSpec::rayleigh(1.0)), User::near),
                    ContractError);
}

TEST_CASE("downlink NOMA closed forms and infeasibility") {
    LinkBudget b = budget(Direction::downlink, Scheme::noma, FadingSpec::rayleigh(1.0), 5.0, 1.0);
    b.powers.split_near = 0.1;
    // beta1 = 1/(0.1 * 5 * 1), beta2 = (1/(5 * 0.4)) / (0.9 - 0.1)
    CHECK(dl_noma_outage(b, User::near).probability == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
    CHECK(dl_noma_outage(b, User::far).probability == doctest::Approx(1.0 - std::exp(-0.625)).epsilon(1e-14));

    b.powers.split_near = 0.4; // a2 = 0.6 > 0.4
    CHECK(dl_noma_outage(b, User::far).probability < 1.0);
    b.powers.split_near = 0.6;
    const OutageResult r = dl_noma_outage(b, User::far);
    CHECK(r.probability == 1.0);
    CHECK(r.infeasible);
    b.powers.split_near = 0.5; // a2 = a1 exactly: SINR ceiling equals the threshold
    CHECK(dl_noma_outage(b, User::far).probability == 1.0);
    b.powers.split_near = 1.0;
    CHECK_THROWS_AS(dl_noma_outage(b, User::near), ContractError);
}

TEST_CASE("uplink far user") {
    const LinkBudget b = budget(Direction::uplink, Scheme::noma, FadingSpec::rayleigh(1.0), 5.0, 1.0);
    CHECK(ul_noma_outage_far(b).probability == doctest::Approx(1.0 - std::exp(-1.0 / 2.0)).epsilon(1e-14));
}

TEST_CASE("Rayleigh near-user uplink reference points") {
    CHECK(ul_near_terrestrial({0.0, 0.0}, 1.0, 1.0).probability == 0.0);
    CHECK(ul_near_terrestrial({1.0, 0.0}, 1.0, 1.0).probability == doctest::Approx(0.5).epsilon(1e-15));
    const OutageResult r = ul_noma_outage_near_terrestrial(1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0);
    CHECK(r.probability == 0.0);
}

TEST_CASE("Rayleigh near-user uplink against the double integral") {
    for (double a1 : {0.05, 0.3, 1.0, 2.5})
        for (double a2 : {0.01, 0.4, 2.0}) {
            CAPTURE(a1);
            CAPTURE(a2);
            CHECK(std::abs(ul_near_terrestrial({a1, a2}, 1.0, 1.0).probability -
                           oracle::near_uplink_rayleigh_2d(a1, a2, 1.0, 1.0)) < 1e-9);
        }
}

TEST_CASE("aerial series against one-dimensional quadrature") {
    specfun::SeriesControl ctl{1e-12, 2048};
    for (double k1 : {0.0, 1.0, 10.0, 30.0})
        for (double k2 : {0.0, 4.0, 10.0})
            for (double a1 : {0.1, 1.0, 2.0})
                for (double a2 : {0.1, 1.0}) {
                    const double o1 = 1.0, o2 = 0.7;
                    const OutageResult s = ul_near_aerial({a1, a2}, {k1, o1}, {k2, o2}, ctl);
                    const double want = oracle::near_uplink_rician(a1, a2, k1, o1, k2, o2);
                    CAPTURE(k1);
                    CAPTURE(k2);
                    CAPTURE(a1);
                    CAPTURE(a2);
                    CHECK(s.method == Method::series);
                    CHECK(std::abs(s.probability - want) < s.truncation_bound + 1e-10);
                }
}

TEST_CASE("aerial series agrees with the Tricomi assembly and library quadrature") {
    for (double a1 : {0.1, 0.5, 2.0})
        for (double a2 : {0.1, 1.0}) {
            const fading::Rician n{10.0, 1.0}, f{10.0, 1.0};
            const double s = ul_near_aerial({a1, a2}, n, f).probability;
            CHECK(ul_near_aerial_tricomi({a1, a2}, n, f).probability == doctest::Approx(s).epsilon(1e-8));
            CHECK(ul_near_quadrature({a1, a2}, FadingSpec::rician(10.0, 1.0), FadingSpec::rician(10.0, 1.0))
                      .probability == doctest::Approx(s).epsilon(1e-8));
        }
}

TEST_CASE("aerial series limits") {
    // K = 0 reduces to the exponential closed form
    for (double a1 : {0.2, 1.0})
        for (double a2 : {0.3, 1.5})
            CHECK(ul_near_aerial({a1, a2}, {0.0, 2.0}, {0.0, 0.5}).probability ==
                  doctest::Approx(ul_near_terrestrial({a1, a2}, 0.5, 2.0).probability).epsilon(1e-12));
    // alpha1 = 0 is the near-user CDF
    CHECK(ul_near_aerial({0.0, 0.8}, {10.0, 1.0}, {3.0, 1.0}).probability ==
          doctest::Approx(fading::cdf(FadingSpec::rician(10.0, 1.0), 0.8)).epsilon(1e-13));
}

TEST_CASE("series convergence bound and truncation error") {
    const UplinkAlphas al{0.7, 0.6};
    const OutageResult tight = ul_near_aerial(al, {20.0, 1.0}, {20.0, 1.0}, {1e-13, 4096});
    for (double tol : {1e-4, 1e-6, 1e-8}) {
        const OutageResult r = ul_near_aerial(al, {20.0, 1.0}, {20.0, 1.0}, {tol, 4096});
        CHECK(r.truncation_bound <= tol);
        CHECK(std::abs(r.probability - tight.probability) <= r.truncation_bound + 1e-12);
    }
    try {
        ul_near_aerial(al, {200.0, 1.0}, {200.0, 1.0}, {1e-12, 20});
        FAIL("expected a truncation error");
    } catch (const TruncationError& e) {
        CHECK(e.bound() > 1e-12);
    }
}

TEST_CASE("unit-threshold alpha grid matches Monte Carlo") {
    const double s = sinr_threshold(1.0);
    const auto spec = FadingSpec::rician(10.0, 1.0);
    std::uint64_t seed = 100;
    for (double a1 : {0.1, 0.5, 2.0})
        for (double a2 : {0.1, 1.0}) {
            const UplinkAlphas al{s * a1, s * a2};
            const double p = ul_near_aerial(al, {10.0, 1.0}, {10.0, 1.0}).probability;
            const mc::McEstimate e = mc::simulate_uplink_alphas(al, spec, spec, {400'000, seed++, 1});
            CHECK(std::abs(p - e.result.probability) <= std::max(5e-3, 4.0 * e.std_error));
        }
}

TEST_CASE("probabilities in [0,1] and monotone in rate and power") {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const bool aerial = trial % 2 == 1;
        const FadingSpec f = aerial ? FadingSpec::rician(15.0 * u(g), 0.5 + u(g)) : FadingSpec::rayleigh(0.5 + u(g));
        LinkBudget b = budget(Direction::downlink, Scheme::noma, f, 1.0 + 9.0 * u(g));
        b.powers.split_near = 0.05 + 0.4 * u(g);
        b.gain_far = 0.1 + 0.9 * u(g);
        for (Direction d : kDirs)
            for (Scheme s : kSchemes)
                for (User usr : kUsers) {
                    b.direction = d;
                    b.scheme = s;
                    double prev = 0.0;
                    for (double rate = 0.0; rate <= 3.0; rate += 0.25) {
                        b.target_rate = rate;
                        const double p = outage(b, usr).probability;
                        CHECK(p >= 0.0);
                        CHECK(p <= 1.0);
                        CHECK(p >= prev - 1e-12);
                        prev = p;
                    }
                    // more of the user's own power never hurts (uplink and OMA)
                    if (d == Direction::uplink || s == Scheme::oma) {
                        b.target_rate = 1.0;
                        LinkBudget more = b;
                        if (d == Direction::downlink) more.powers.total *= 2.0;
                        else if (usr == User::near) more.powers.near *= 2.0;
                        else more.powers.far *= 2.0;
                        CHECK(outage(more, usr).probability <= outage(b, usr).probability + 1e-12);
                    }
                }
    }
}

TEST_CASE("noma_gain") {
    const OutageResult a{0.3, Method::closed_form, 0, 0.0, false};
    CHECK(noma_gain(a, a) == 0.0);
    CHECK(noma_gain({1.0, Method::closed_form, 0, 0.0, false}, {0.0, Method::closed_form, 0, 0.0, false}) == 1.0);
}

TEST_CASE("scenario validation") {
    LinkScenario s;
    CHECK_NOTHROW(s.validate());
    s.geometry.r_near_m = 200.0;
    s.geometry.r_far_m = 100.0;
    CHECK_THROWS_AS(s.validate(), ContractError);
    s = {};
    s.target_rate = -1.0;
    CHECK_THROWS_AS(s.validate(), ContractError);
    s = {};
    s.powers.total = 0.0;
    CHECK_THROWS_AS(link_budget(s), ContractError);
}

TEST_CASE("scenario dispatch uses the domain gains") {
    LinkScenario s;
    s.direction = Direction::uplink;
    s.domain = Domain::terrestrial;
    s.fading_near = s.fading_far = FadingSpec::rayleigh(1.0);
    s.geometry = {0.0, 50.0, 300.0};
    s.powers.near = s.powers.far = 1e9;
    const LinkBudget b = link_budget(s);
    CHECK(b.gain_near == doctest::Approx(channel::channel_gain(channel::terrestrial_path_loss_db(s.env, 50.0))));
    s.domain = Domain::aerial;
    s.geometry.altitude_m = 600.0;
    CHECK(link_budget(s).gain_far ==
          doctest::Approx(channel::channel_gain(channel::aerial_path_loss_db(s.env, 600.0, 300.0))));
    CHECK(large_scale_gain(s, User::far) == link_budget(s).gain_far);
}

}
