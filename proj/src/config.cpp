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

#include <fstream>
#include <set>

namespace noma::cli {
namespace {

using nlohmann::json;

// Reads fields from one JSON object, naming the offending field on failure
// and rejecting keys it was never asked about.
class Reader {
  public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    template <class T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(field(key) + ": " + e.what());
        }
    }

    template <class E>
    void get_enum(const char* key, E& out, E (*parse)(const std::string&)) {
        std::string s;
        seen_.insert(key);
        if (!j_.contains(key)) return;
        get(key, s);
        try {
            out = parse(s);
        } catch (const ConfigError& e) {
            throw ConfigError(field(key) + ": " + e.what());
        }
    }

    const json* child(const char* key) {
        seen_.insert(key);
        return j_.contains(key) ? &j_.at(key) : nullptr;
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& [k, v] : j_.items())
            if (!seen_.count(k)) throw ConfigError(field(k) + ": unknown field");
    }

  private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& field, const char* msg) {
    if (!ok) throw ConfigError(field + ": " + msg);
}

Direction parse_direction(const std::string& s) {
    if (s == "uplink") return Direction::uplink;
    if (s == "downlink") return Direction::downlink;
    throw ConfigError("expected uplink or downlink, got '" + s + "'");
}
Domain parse_domain(const std::string& s) {
    if (s == "terrestrial") return Domain::terrestrial;
    if (s == "aerial") return Domain::aerial;
    throw ConfigError("expected terrestrial or aerial, got '" + s + "'");
}
Scheme parse_scheme(const std::string& s) {
    if (s == "noma") return Scheme::noma;
    if (s == "oma") return Scheme::oma;
    throw ConfigError("expected noma or oma, got '" + s + "'");
}
User parse_user(const std::string& s) {
    if (s == "near") return User::near;
    if (s == "far") return User::far;
    throw ConfigError("expected near or far, got '" + s + "'");
}
Averaging parse_averaging(const std::string& s) {
    if (s == "placement") return Averaging::placement;
    if (s == "fixed") return Averaging::fixed;
    throw ConfigError("expected placement or fixed, got '" + s + "'");
}
SweepVariable parse_variable(const std::string& s) {
    if (s == "target_rate") return SweepVariable::target_rate;
    if (s == "altitude") return SweepVariable::altitude;
    if (s == "power_split") return SweepVariable::power_split;
    if (s == "user_power") return SweepVariable::user_power;
    if (s == "rice_k") return SweepVariable::rice_k;
    throw ConfigError("unknown sweep variable '" + s + "'");
}
Engine parse_engine_str(const std::string& s) { return parse_engine(s); }

void check_scenario(const ScenarioConfig& s, const std::string& path) {
    auto f = [&](const char* k) { return path.empty() ? std::string(k) : path + "." + k; };
    require(s.altitude_m >= 0.0, f("altitude_m"), "must be >= 0");
    require(s.r_near_m >= 0.0, f("r_near_m"), "must be >= 0");
    require(s.r_far_m >= s.r_near_m, f("r_far_m"), "must be >= r_near_m");
    require(s.total_power_w > 0.0, f("total_power_w"), "must be positive");
    require(s.power_split_near > 0.0 && s.power_split_near < 1.0, f("power_split_near"), "must lie in (0, 1)");
    require(s.user_power_near_w > 0.0, f("user_power_near_w"), "must be positive");
    require(s.user_power_far_w > 0.0, f("user_power_far_w"), "must be positive");
    require(s.target_rate_bps_hz >= 0.0, f("target_rate_bps_hz"), "must be >= 0");
    require(s.rice_k >= 0.0, f("rice_k"), "must be >= 0");
    require(s.rician_omega > 0.0, f("rician_omega"), "must be positive");
    require(s.rayleigh_lambda > 0.0, f("rayleigh_lambda"), "must be positive");
    require(s.noise_psd_w_per_hz > 0.0, f("noise_psd_w_per_hz"), "must be positive");
    require(s.bandwidth_hz > 0.0, f("bandwidth_hz"), "must be positive");
}

ScenarioConfig read_scenario(const json& j, ScenarioConfig s, const std::string& path, bool allow_tag) {
    Reader r(j, path);
    if (allow_tag) {
        std::string tag;
        r.get("tag", tag);
    }
    r.get_enum("direction", s.direction, parse_direction);
    r.get_enum("domain", s.domain, parse_domain);
    r.get_enum("averaging", s.averaging, parse_averaging);
    r.get("altitude_m", s.altitude_m);
    r.get("r_near_m", s.r_near_m);
    r.get("r_far_m", s.r_far_m);
    r.get("total_power_w", s.total_power_w);
    r.get("power_split_near", s.power_split_near);
    r.get("user_power_near_w", s.user_power_near_w);
    r.get("user_power_far_w", s.user_power_far_w);
    r.get("target_rate_bps_hz", s.target_rate_bps_hz);
    r.get("rice_k", s.rice_k);
    r.get("rician_omega", s.rician_omega);
    r.get("rayleigh_lambda", s.rayleigh_lambda);
    r.get("noise_psd_w_per_hz", s.noise_psd_w_per_hz);
    r.get("bandwidth_hz", s.bandwidth_hz);
    r.finish();
    check_scenario(s, path);
    return s;
}

} // namespace

std::string_view to_string(Engine e) {
    switch (e) {
    case Engine::analytic: return "analytic";
    case Engine::monte_carlo: return "mc";
    case Engine::both: return "both";
    }
    return "analytic";
}

std::string_view to_string(Averaging a) { return a == Averaging::placement ? "placement" : "fixed"; }

std::string_view to_string(SweepVariable v) {
    switch (v) {
    case SweepVariable::target_rate: return "target_rate";
    case SweepVariable::altitude: return "altitude";
    case SweepVariable::power_split: return "power_split";
    case SweepVariable::user_power: return "user_power";
    case SweepVariable::rice_k: return "rice_k";
    }
    return "target_rate";
}

Engine parse_engine(std::string_view s) {
    if (s == "analytic") return Engine::analytic;
    if (s == "mc" || s == "monte_carlo") return Engine::monte_carlo;
    if (s == "both") return Engine::both;
    throw ConfigError("engine must be analytic, mc or both, got '" + std::string(s) + "'");
}

std::vector<double> SweepSpec::points() const {
    std::vector<double> pts(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        pts[static_cast<std::size_t>(i)] =
            i == steps - 1 ? stop : start + (stop - start) * static_cast<double>(i) / (steps - 1);
    return pts;
}

ScenarioConfig parse_scenario(const json& j) { return read_scenario(j, ScenarioConfig{}, "scenario", false); }

json to_json(const ScenarioConfig& s) {
    return json{{"direction", to_string(s.direction)},
                {"domain", to_string(s.domain)},
                {"averaging", to_string(s.averaging)},
                {"altitude_m", s.altitude_m},
                {"r_near_m", s.r_near_m},
                {"r_far_m", s.r_far_m},
                {"total_power_w", s.total_power_w},
                {"power_split_near", s.power_split_near},
                {"user_power_near_w", s.user_power_near_w},
                {"user_power_far_w", s.user_power_far_w},
                {"target_rate_bps_hz", s.target_rate_bps_hz},
                {"rice_k", s.rice_k},
                {"rician_omega", s.rician_omega},
                {"rayleigh_lambda", s.rayleigh_lambda},
                {"noise_psd_w_per_hz", s.noise_psd_w_per_hz},
                {"bandwidth_hz", s.bandwidth_hz}};
}

ScenarioConfig apply_overrides(const ScenarioConfig& base, const json& overrides) {
    return read_scenario(overrides, base, "variant", true);
}

ScenarioConfig with_variable(ScenarioConfig s, SweepVariable v, double value) {
    switch (v) {
    case SweepVariable::target_rate: s.target_rate_bps_hz = value; break;
    case SweepVariable::altitude: s.altitude_m = value; break;
    case SweepVariable::power_split: s.power_split_near = value; break;
    case SweepVariable::user_power:
        s.user_power_near_w = value;
        s.user_power_far_w = value;
        break;
    case SweepVariable::rice_k: s.rice_k = value; break;
    }
    check_scenario(s, "sweep");
    return s;
}

LinkScenario make_link(const ScenarioConfig& s, const channel::EnvironmentParams& env, Scheme scheme) {
    LinkScenario l;
    l.direction = s.direction;
    l.domain = s.domain;
    l.scheme = scheme;
    l.geometry = {s.domain == Domain::terrestrial ? 0.0 : s.altitude_m, s.r_near_m, s.r_far_m};
    const double n0 = s.noise_power_w();
    l.powers.total = s.total_power_w / n0;
    l.powers.split_near = s.power_split_near;
    l.powers.near = s.user_power_near_w / n0;
    l.powers.far = s.user_power_far_w / n0;
    l.target_rate = s.target_rate_bps_hz;
    if (s.domain == Domain::terrestrial) {
        l.fading_near = l.fading_far = fading::FadingSpec::rayleigh(s.rayleigh_lambda);
    } else {
        l.fading_near = l.fading_far = fading::FadingSpec::rician(s.rice_k, s.rician_omega);
    }
    l.env = env;
    return l;
}

Config parse_config(const json& j) {
    Config c;
    Reader top(j, "");
    if (const json* e = top.child("environment")) {
        Reader r(*e, "environment");
        r.get("fc_hz", c.env.carrier_hz);
        r.get("speed_of_light_m_per_s", c.env.speed_of_light);
        r.get("terrestrial_exponent", c.env.alpha_t);
        r.get("terrestrial_eta_db", c.env.eta_t_db);
        r.get("eta_los_db", c.env.eta_los_db);
        r.get("eta_nlos_db", c.env.eta_nlos_db);
        r.get("los_a", c.env.los_a);
        r.get("los_b_per_deg", c.env.los_b);
        r.finish();
        try {
            c.env.validate();
        } catch (const std::exception& ex) {
            throw ConfigError(std::string("environment: ") + ex.what());
        }
    }
    if (const json* p = top.child("placement")) {
        Reader r(*p, "placement");
        r.get("n_users", c.placement.n_users);
        r.get("cell_radius_m", c.placement.cell_radius_m);
        r.finish();
        require(c.placement.n_users >= 2, "placement.n_users", "must be >= 2");
        require(c.placement.cell_radius_m > 0.0, "placement.cell_radius_m", "must be positive");
    }
    if (const json* s = top.child("series")) {
        Reader r(*s, "series");
        r.get("rel_tol", c.series.rel_tol);
        r.get("max_terms", c.series.max_terms);
        r.finish();
        require(c.series.rel_tol > 0.0, "series.rel_tol", "must be positive");
        require(c.series.max_terms >= 1, "series.max_terms", "must be >= 1");
    }
    if (const json* q = top.child("quadrature")) {
        Reader r(*q, "quadrature");
        r.get("nodes_1d", c.quad.nodes_1d);
        r.get("nodes_2d", c.quad.nodes_2d);
        r.get("tail_mass", c.quad.tail);
        r.get("max_error", c.quad.max_error);
        r.finish();
        require(c.quad.nodes_1d >= 1, "quadrature.nodes_1d", "must be >= 1");
        require(c.quad.nodes_2d >= 1, "quadrature.nodes_2d", "must be >= 1");
        require(c.quad.tail >= 0.0 && c.quad.tail < 0.5, "quadrature.tail_mass", "must lie in [0, 0.5)");
        require(c.quad.max_error > 0.0, "quadrature.max_error", "must be positive");
    }
    if (const json* m = top.child("monte_carlo")) {
        Reader r(*m, "monte_carlo");
        r.get("samples", c.mc.n_samples);
        r.get("seed", c.mc.base_seed);
        r.get("workers", c.mc.n_workers);
        r.finish();
        require(c.mc.n_samples >= 1, "monte_carlo.samples", "must be >= 1");
        require(c.mc.n_workers >= 1, "monte_carlo.workers", "must be >= 1");
    }
    c.quad.n_workers = c.mc.n_workers;
    top.get_enum("engine", c.engine, parse_engine_str);
    if (const json* s = top.child("scenario")) c.scenario = parse_scenario(*s);

    if (const json* sw = top.child("sweep")) {
        SweepSpec spec;
        Reader r(*sw, "sweep");
        r.get_enum("variable", spec.variable, parse_variable);
        r.get("start", spec.start);
        r.get("stop", spec.stop);
        r.get("steps", spec.steps);
        require(spec.steps >= 2, "sweep.steps", "must be >= 2");
        if (const json* vs = r.child("variants")) {
            require(vs->is_array(), "sweep.variants", "expected an array");
            for (const auto& v : *vs) {
                apply_overrides(c.scenario, v); // validates keys and values
                spec.variants.push_back(v);
            }
        }
        if (const json* os = r.child("outputs")) {
            require(os->is_array(), "sweep.outputs", "expected an array");
            for (const auto& o : *os) {
                OutputSpec out;
                Reader ro(o, "sweep.outputs[]");
                ro.get_enum("scheme", out.scheme, parse_scheme);
                ro.get_enum("user", out.user, parse_user);
                if (o.contains("direction")) {
                    Direction d{};
                    ro.get_enum("direction", d, parse_direction);
                    out.direction = d;
                } else {
                    ro.child("direction");
                }
                if (o.contains("domain")) {
                    Domain d{};
                    ro.get_enum("domain", d, parse_domain);
                    out.domain = d;
                } else {
                    ro.child("domain");
                }
                ro.finish();
                spec.outputs.push_back(out);
            }
        }
        if (spec.outputs.empty()) {
            for (User u : {User::near, User::far})
                for (Scheme s : {Scheme::noma, Scheme::oma}) spec.outputs.push_back({s, u, {}, {}});
        }
        r.finish();
        // every point must be a valid scenario for every variant
        std::vector<ScenarioConfig> bases{c.scenario};
        for (const auto& v : spec.variants) bases.push_back(apply_overrides(c.scenario, v));
        for (const auto& b : bases)
            for (double x : spec.points()) with_variable(b, spec.variable, x);
        c.sweep = spec;
    }
    if (const json* v = top.child("validate")) {
        ValidateSpec spec;
        Reader r(*v, "validate");
        r.get("alpha1", spec.alpha1);
        r.get("alpha2", spec.alpha2);
        r.get("target_rate_bps_hz", spec.target_rate_bps_hz);
        r.get("rice_k_near", spec.rice_k_near);
        r.get("rice_k_far", spec.rice_k_far);
        r.get("omega_near", spec.omega_near);
        r.get("omega_far", spec.omega_far);
        r.get("abs_tol", spec.abs_tol);
        r.get("se_multiplier", spec.se_multiplier);
        r.finish();
        require(!spec.alpha1.empty() && !spec.alpha2.empty(), "validate.alpha1", "grid must be non-empty");
        for (double a : spec.alpha1) require(a > 0.0, "validate.alpha1", "entries must be positive");
        for (double a : spec.alpha2) require(a > 0.0, "validate.alpha2", "entries must be positive");
        require(spec.target_rate_bps_hz >= 0.0, "validate.target_rate_bps_hz", "must be >= 0");
        require(spec.rice_k_near >= 0.0 && spec.rice_k_far >= 0.0, "validate.rice_k_near", "must be >= 0");
        require(spec.omega_near > 0.0 && spec.omega_far > 0.0, "validate.omega_near", "must be positive");
        require(spec.abs_tol >= 0.0, "validate.abs_tol", "must be >= 0");
        require(spec.se_multiplier >= 0.0, "validate.se_multiplier", "must be >= 0");
        c.validate = spec;
    }
    top.finish();
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path + "': " + e.what());
    }
    return parse_config(j);
}

json to_json(const Config& c) {
    json j;
    j["environment"] = {{"fc_hz", c.env.carrier_hz},
                        {"speed_of_light_m_per_s", c.env.speed_of_light},
                        {"terrestrial_exponent", c.env.alpha_t},
                        {"terrestrial_eta_db", c.env.eta_t_db},
                        {"eta_los_db", c.env.eta_los_db},
                        {"eta_nlos_db", c.env.eta_nlos_db},
                        {"los_a", c.env.los_a},
                        {"los_b_per_deg", c.env.los_b}};
    j["placement"] = {{"n_users", c.placement.n_users}, {"cell_radius_m", c.placement.cell_radius_m}};
    j["series"] = {{"rel_tol", c.series.rel_tol}, {"max_terms", c.series.max_terms}};
    j["quadrature"] = {{"nodes_1d", c.quad.nodes_1d},
                       {"nodes_2d", c.quad.nodes_2d},
                       {"tail_mass", c.quad.tail},
                       {"max_error", c.quad.max_error}};
    j["monte_carlo"] = {{"samples", c.mc.n_samples}, {"seed", c.mc.base_seed}, {"workers", c.mc.n_workers}};
    j["engine"] = to_string(c.engine);
    j["scenario"] = to_json(c.scenario);
    if (c.sweep) {
        json outs = json::array();
        for (const auto& o : c.sweep->outputs) {
            json jo{{"scheme", to_string(o.scheme)}, {"user", to_string(o.user)}};
            if (o.direction) jo["direction"] = to_string(*o.direction);
            if (o.domain) jo["domain"] = to_string(*o.domain);
            outs.push_back(jo);
        }
        j["sweep"] = {{"variable", to_string(c.sweep->variable)},
                      {"start", c.sweep->start},
                      {"stop", c.sweep->stop},
                      {"steps", c.sweep->steps},
                      {"variants", c.sweep->variants},
                      {"outputs", outs}};
    }
    if (c.validate) {
        const auto& v = *c.validate;
        j["validate"] = {{"alpha1", v.alpha1},
                         {"alpha2", v.alpha2},
                         {"target_rate_bps_hz", v.target_rate_bps_hz},
                         {"rice_k_near", v.rice_k_near},
                         {"rice_k_far", v.rice_k_far},
                         {"omega_near", v.omega_near},
                         {"omega_far", v.omega_far},
                         {"abs_tol", v.abs_tol},
                         {"se_multiplier", v.se_multiplier}};
    }
    return j;
}

bool Config::operator==(const Config& o) const { return to_json(*this) == to_json(o); }

} // namespace noma::cli
