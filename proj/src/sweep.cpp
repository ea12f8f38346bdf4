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

#include "noma/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <tuple>

namespace noma::cli {
namespace {

std::string fmt(const std::optional<double>& v) {
    if (!v) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", *v);
    return buf;
}

struct Group {
    User user;
    Direction direction;
    Domain domain;
    bool want[2]; // indexed by scheme
};

// Outputs sharing (user, direction, domain) are evaluated together so the
// gain can be formed from both schemes.
std::vector<Group> group_outputs(const std::vector<OutputSpec>& outs, const ScenarioConfig& s) {
    std::vector<Group> groups;
    for (const auto& o : outs) {
        const Direction d = o.direction.value_or(s.direction);
        const Domain m = o.domain.value_or(s.domain);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return g.user == o.user && g.direction == d && g.domain == m;
        });
        if (it == groups.end()) {
            groups.push_back({o.user, d, m, {false, false}});
            it = groups.end() - 1;
        }
        it->want[o.scheme == Scheme::noma ? 0 : 1] = true;
    }
    return groups;
}

struct Eval {
    std::optional<double> analytic;
    std::optional<double> mc;
    std::optional<double> se;
};

Eval evaluate(const Config& cfg, const ScenarioConfig& s, User user, Scheme scheme, std::uint64_t seed,
              int workers) {
    const LinkScenario link = make_link(s, cfg.env, scheme);
    Eval e;
    if (cfg.engine != Engine::monte_carlo) {
        if (s.averaging == Averaging::placement) {
            placement::QuadControl q = cfg.quad;
            q.n_workers = workers;
            e.analytic = placement::expected_outage(cfg.placement, link, user, q, cfg.series).probability;
        } else {
            e.analytic = outage(link, user, cfg.series).probability;
        }
    }
    if (cfg.engine != Engine::analytic) {
        mc::McConfig m = cfg.mc;
        m.base_seed = seed;
        m.n_workers = workers;
        const mc::McEstimate est = s.averaging == Averaging::placement
                                       ? placement::simulate_placement_outage(cfg.placement, link, user, m)
                                       : mc::simulate_outage(link, user, m);
        e.mc = est.result.probability;
        e.se = est.std_error;
    }
    return e;
}

std::string variant_tag(const nlohmann::json& v) {
    if (!v.contains("tag")) return {};
    return v.at("tag").is_string() ? v.at("tag").get<std::string>() : v.at("tag").dump();
}

// Rows for one scenario point; seed_base spaces the Monte-Carlo streams.
std::vector<SweepRow> point_rows(const Config& cfg, const ScenarioConfig& base, const std::vector<Group>& groups,
                                 std::optional<double> variable, const std::string& tag, std::uint64_t seed_base,
                                 int workers) {
    std::vector<SweepRow> rows;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const Group& grp = groups[g];
        ScenarioConfig s = base;
        s.direction = grp.direction;
        s.domain = grp.domain;
        Eval ev[2];
        for (int k = 0; k < 2; ++k) {
            const Scheme scheme = k == 0 ? Scheme::noma : Scheme::oma;
            ev[k] = evaluate(cfg, s, grp.user, scheme, seed_base + 2 * g + static_cast<std::uint64_t>(k), workers);
        }
        std::optional<double> gain;
        if (ev[0].analytic && ev[1].analytic)
            gain = *ev[1].analytic - *ev[0].analytic;
        else if (ev[0].mc && ev[1].mc)
            gain = *ev[1].mc - *ev[0].mc;
        for (int k = 0; k < 2; ++k) {
            if (!grp.want[k]) continue;
            SweepRow r;
            r.variable = variable;
            r.scenario = scenario_tag(grp.direction, grp.domain, tag);
            r.user = grp.user;
            r.scheme = k == 0 ? Scheme::noma : Scheme::oma;
            r.analytic_p = ev[k].analytic;
            r.mc_p = ev[k].mc;
            r.mc_se = ev[k].se;
            r.noma_gain = gain;
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

} // namespace

std::string scenario_tag(Direction d, Domain m, const std::string& variant_tag) {
    std::string s = std::string(to_string(d)) + "-" + std::string(to_string(m));
    if (!variant_tag.empty()) s += "/" + variant_tag;
    return s;
}

std::vector<SweepRow> run_sweep(const Config& cfg) {
    if (!cfg.sweep) throw ConfigError("sweep: section missing");
    const SweepSpec& sw = *cfg.sweep;
    const std::vector<double> pts = sw.points();

    std::vector<std::pair<ScenarioConfig, std::string>> variants;
    if (sw.variants.empty()) {
        variants.emplace_back(cfg.scenario, std::string{});
    } else {
        for (const auto& v : sw.variants) variants.emplace_back(apply_overrides(cfg.scenario, v), variant_tag(v));
    }

    const std::size_t n_jobs = variants.size() * pts.size();
    std::vector<std::vector<SweepRow>> out(n_jobs);
    std::vector<std::exception_ptr> errors(n_jobs);
    const auto count = static_cast<std::int64_t>(n_jobs);
    const int workers = cfg.mc.n_workers;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t j = 0; j < count; ++j) {
        const auto job = static_cast<std::size_t>(j);
        try {
            const auto& [base, tag] = variants[job / pts.size()];
            const double x = pts[job % pts.size()];
            const ScenarioConfig s = with_variable(base, sw.variable, x);
            const auto groups = group_outputs(sw.outputs, s);
            out[job] = point_rows(cfg, s, groups, x, tag, cfg.mc.base_seed + 4 * groups.size() * job, 1);
        } catch (...) {
            errors[job] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<SweepRow> rows;
    for (auto& block : out)
        for (auto& r : block) rows.push_back(std::move(r));
    return rows;
}

std::vector<SweepRow> run_gain(const Config& cfg) {
    std::vector<OutputSpec> outs;
    for (User u : {User::near, User::far})
        for (Scheme s : {Scheme::noma, Scheme::oma}) outs.push_back({s, u, {}, {}});
    const auto groups = group_outputs(outs, cfg.scenario);
    return point_rows(cfg, cfg.scenario, groups, std::nullopt, {}, cfg.mc.base_seed, cfg.mc.n_workers);
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "variable,scenario,user,scheme,analytic_p,mc_p,mc_se,noma_gain\n";
    for (const auto& r : rows) {
        os << fmt(r.variable) << ',' << r.scenario << ',' << to_string(r.user) << ',' << to_string(r.scheme) << ','
           << fmt(r.analytic_p) << ',' << fmt(r.mc_p) << ',' << fmt(r.mc_se) << ',' << fmt(r.noma_gain) << '\n';
    }
}

std::vector<ValidateRow> run_validate(const Config& cfg) {
    const ValidateSpec v = cfg.validate.value_or(ValidateSpec{});
    const double s = sinr_threshold(v.target_rate_bps_hz);
    const fading::Rician near{v.rice_k_near, v.omega_near};
    const fading::Rician far{v.rice_k_far, v.omega_far};
    const auto fnear = fading::FadingSpec::rician(v.rice_k_near, v.omega_near);
    const auto ffar = fading::FadingSpec::rician(v.rice_k_far, v.omega_far);

    std::vector<ValidateRow> rows;
    std::uint64_t index = 0;
    for (double a1 : v.alpha1) {
        for (double a2 : v.alpha2) {
            const UplinkAlphas al{s * a1, s * a2};
            ValidateRow r;
            r.alpha1 = a1;
            r.alpha2 = a2;
            r.analytic_p = ul_near_aerial(al, near, far, cfg.series).probability;
            mc::McConfig m = cfg.mc;
            m.base_seed = cfg.mc.base_seed + index++;
            const mc::McEstimate est = mc::simulate_uplink_alphas(al, fnear, ffar, m);
            r.mc_p = est.result.probability;
            r.mc_se = est.std_error;
            r.abs_diff = std::abs(r.analytic_p - r.mc_p);
            r.pass = r.abs_diff <= std::max(v.abs_tol, v.se_multiplier * r.mc_se);
            rows.push_back(r);
        }
    }
    return rows;
}

void write_csv(std::ostream& os, const std::vector<ValidateRow>& rows) {
    os << "alpha1,alpha2,analytic_p,mc_p,mc_se,abs_diff,pass\n";
    for (const auto& r : rows) {
        os << fmt(r.alpha1) << ',' << fmt(r.alpha2) << ',' << fmt(r.analytic_p) << ',' << fmt(r.mc_p) << ','
           << fmt(r.mc_se) << ',' << fmt(r.abs_diff) << ',' << (r.pass ? "true" : "false") << '\n';
    }
}

} // namespace noma::cli
