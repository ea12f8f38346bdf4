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

#include "noma/config.hpp"
#include "noma/sweep.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>

using namespace noma;
using namespace noma::cli;
using nlohmann::json;

namespace {

std::string parse_error(const json& j) {
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("defaults") {
    const Config c = parse_config(json::object());
    CHECK(c.placement.n_users == 100);
    CHECK(c.placement.cell_radius_m == 500.0);
    CHECK(c.env.carrier_hz == 2.5e9);
    CHECK(c.env.eta_los_db == 1.6);
    CHECK(c.env.eta_nlos_db == 23.0);
    CHECK(c.scenario.noise_psd_w_per_hz == 1e-10);
    CHECK(c.scenario.rayleigh_lambda == 1.0);
    CHECK(c.scenario.rician_omega == 1.0);
    CHECK(!c.sweep);
}

TEST_CASE("errors name the offending field") {
    CHECK(parse_error(json{{"scenario", {{"altitude_m", "high"}}}}).find("scenario.altitude_m") != std::string::npos);
    CHECK(parse_error(json{{"scenario", {{"altitud_m", 10}}}}).find("scenario.altitud_m: unknown field") !=
          std::string::npos);
    CHECK(parse_error(json{{"monte_carlo", {{"samples", 0}}}}).find("monte_carlo.samples") != std::string::npos);
    CHECK(parse_error(json{{"scenario", {{"power_split_near", 1.2}}}}).find("power_split_near") != std::string::npos);
    CHECK(parse_error(json{{"sweep", {{"variable", "altitude"}, {"steps", 1}}}}).find("sweep.steps") !=
          std::string::npos);
    CHECK(parse_error(json{{"sweep", {{"variable", "rice_k"}, {"start", -1}, {"stop", 2}, {"steps", 3}}}})
              .find("rice_k") != std::string::npos);
    CHECK(parse_error(json{{"engine", "fast"}}).find("engine") != std::string::npos);
    CHECK(parse_error(json{{"bogus", 1}}).find("bogus") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/file.json"), ConfigError);
}

TEST_CASE("shipped configs round-trip") {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(NOMA_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().string());
        const Config a = load_config(entry.path().string());
        const Config b = parse_config(to_json(a));
        CHECK(a == b);
        CHECK(to_json(b) == to_json(a));
        ++seen;
    }
    CHECK(seen >= 8);
}

TEST_CASE("sweep points") {
    SweepSpec s;
    s.start = 1.0;
    s.stop = 2.0;
    s.steps = 5;
    const auto p = s.points();
    REQUIRE(p.size() == 5);
    CHECK(p[0] == 1.0);
    CHECK(p[2] == 1.5);
    CHECK(p[4] == 2.0);
}

TEST_CASE("physical to normalized link") {
    ScenarioConfig s;
    s.domain = Domain::terrestrial;
    s.bandwidth_hz = 2.0;
    const LinkScenario l = make_link(s, {}, Scheme::oma);
    CHECK(l.powers.total == doctest::Approx(5.0 / 2e-10));
    CHECK(l.fading_near.is_rayleigh());
    CHECK(l.geometry.altitude_m == 0.0);
    s.domain = Domain::aerial;
    CHECK(make_link(s, {}, Scheme::noma).fading_far.as_rician().k_factor == 10.0);
}

TEST_CASE("collapsed sweep gives identical rows") {
    json j = {{"scenario", {{"averaging", "fixed"}, {"bandwidth_hz", 1.0}}},
              {"sweep", {{"variable", "target_rate"}, {"start", 0.7}, {"stop", 0.7}, {"steps", 2},
                         {"outputs", {{{"scheme", "noma"}, {"user", "far"}}}}}}};
    const auto rows = run_sweep(parse_config(j));
    REQUIRE(rows.size() == 2);
    std::ostringstream a, b;
    write_csv(a, {rows[0]});
    write_csv(b, {rows[1]});
    CHECK(a.str() == b.str());
}

TEST_CASE("sweep output is byte-deterministic across worker counts") {
    json j = {{"engine", "both"},
              {"monte_carlo", {{"samples", 20000}, {"seed", 3}}},
              {"scenario", {{"averaging", "placement"}, {"bandwidth_hz", 0.82}}},
              {"sweep",
               {{"variable", "altitude"},
                {"start", 200},
                {"stop", 2000},
                {"steps", 4},
                {"variants", {{{"tag", "K=1"}, {"rice_k", 1}}, {{"tag", "K=10"}, {"rice_k", 10}}}}}}};
    Config c = parse_config(j);
    std::ostringstream ref;
    write_csv(ref, run_sweep(c));
    for (int w : {2, 3}) {
        c.mc.n_workers = c.quad.n_workers = w;
        std::ostringstream out;
        write_csv(out, run_sweep(c));
        CHECK(out.str() == ref.str());
    }
    CHECK(ref.str().rfind("variable,scenario,user,scheme,analytic_p,mc_p,mc_se,noma_gain\n", 0) == 0);
    CHECK(ref.str().find("downlink-aerial/K=10,far,oma,") != std::string::npos);
}

TEST_CASE("engine selection leaves empty fields") {
    json j = {{"engine", "analytic"}, {"scenario", {{"averaging", "fixed"}}}};
    std::ostringstream out;
    write_csv(out, run_gain(parse_config(j)));
    CHECK(out.str().find(",,,") != std::string::npos); // empty variable and mc columns
}

TEST_CASE("validate grid at zero rate") {
    json j = {{"monte_carlo", {{"samples", 1000}}}, {"validate", {{"target_rate_bps_hz", 0.0}}}};
    for (const auto& r : run_validate(parse_config(j))) {
        CHECK(r.analytic_p == 0.0);
        CHECK(r.mc_p == 0.0);
        CHECK(r.pass);
    }
}

}
