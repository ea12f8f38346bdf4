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

#include "noma/placement.hpp"

#include "noma/errors.hpp"
#include "noma/quadrature.hpp"
#include "noma/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace noma::placement {
namespace {

void check_densities(const PlacementModel& pm) {
    if (pm.n_users < 1) throw ContractError("placement: n_users must be >= 1");
    if (!(pm.cell_radius_m > 0.0)) throw ContractError("placement: cell radius must be positive");
}

bool uses_both_radii(const LinkScenario& tmpl, User user) {
    return tmpl.scheme == Scheme::noma && tmpl.direction == Direction::uplink && user == User::near;
}

LinkScenario at_radii(const LinkScenario& tmpl, double r_near, double r_far) {
    LinkScenario s = tmpl;
    s.geometry.r_near_m = r_near;
    s.geometry.r_far_m = r_far;
    return s;
}

// Conditional outage with the radii fixed. Ordering of r1, r2 is not
// enforced: the product density puts mass on r1 > r2 as well.
double conditional_outage(const LinkScenario& tmpl, User user, double r_near, double r_far,
                          const specfun::SeriesControl& series) {
    const LinkScenario s = at_radii(tmpl, r_near, r_far);
    return outage(link_budget_unchecked(s), user, series).probability;
}

struct Nodes {
    std::vector<double> r;
    std::vector<double> w; // quadrature weight times density
};

Nodes density_nodes(const PlacementModel& pm, User user, int n, double tail) {
    const Interval iv = user == User::near ? support_rmin(pm, tail) : support_rmax(pm, tail);
    const quad::Rule rule = quad::gauss_legendre(n, iv.lo, iv.hi);
    Nodes nodes;
    nodes.r = rule.nodes;
    nodes.w.resize(rule.weights.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double d = user == User::near ? pdf_rmin(pm, rule.nodes[i]) : pdf_rmax(pm, rule.nodes[i]);
        nodes.w[i] = rule.weights[i] * d;
    }
    return nodes;
}

double integrate(const PlacementModel& pm, const LinkScenario& tmpl, User user, int n, double tail,
                 const specfun::SeriesControl& series, int workers) {
    if (!uses_both_radii(tmpl, user)) {
        const Nodes nodes = density_nodes(pm, user, n, tail);
        std::vector<double> values(nodes.r.size());
        const auto count = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
        for (std::int64_t i = 0; i < count; ++i) {
            const double r = nodes.r[static_cast<std::size_t>(i)];
            values[static_cast<std::size_t>(i)] = conditional_outage(tmpl, user, r, r, series);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) acc += nodes.w[i] * values[i];
        return acc;
    }
    const Nodes near = density_nodes(pm, User::near, n, tail);
    const Nodes far = density_nodes(pm, User::far, n, tail);
    const std::size_t m = far.r.size();
    std::vector<double> values(near.r.size() * m);
    const auto count = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(workers)
    for (std::int64_t idx = 0; idx < count; ++idx) {
        const auto k = static_cast<std::size_t>(idx);
        values[k] = conditional_outage(tmpl, user, near.r[k / m], far.r[k % m], series);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < near.r.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m; ++j) row += far.w[j] * values[i * m + j];
        acc += near.w[i] * row;
    }
    return acc;
}

PlacementResult run(const PlacementModel& pm, const LinkScenario& tmpl, User user, const QuadControl& quad,
                    const specfun::SeriesControl& series, int workers) {
    pm.validate();
    quad.validate();
    const int n = uses_both_radii(tmpl, user) ? quad.nodes_2d : quad.nodes_1d;
    const double coarse = integrate(pm, tmpl, user, n, quad.tail, series, workers);
    const double fine = integrate(pm, tmpl, user, 2 * n, quad.tail, series, workers);
    PlacementResult r;
    r.probability = std::clamp(fine, 0.0, 1.0);
    r.error_estimate = std::abs(fine - coarse) + 2.0 * quad.tail;
    if (r.error_estimate > quad.max_error)
        throw QuadratureError("placement average did not converge (error estimate " +
                                  std::to_string(r.error_estimate) + ")",
                              r.error_estimate);
    return r;
}

} // namespace

void PlacementModel::validate() const {
    if (n_users < 2) throw ContractError("placement: n_users must be >= 2");
    if (!(cell_radius_m > 0.0)) throw ContractError("placement: cell radius must be positive");
}

void QuadControl::validate() const {
    if (nodes_1d < 1 || nodes_2d < 1) throw ContractError("QuadControl: node counts must be positive");
    if (!(tail >= 0.0 && tail < 0.5)) throw ContractError("QuadControl: tail must lie in [0, 0.5)");
    if (!(max_error > 0.0)) throw ContractError("QuadControl: max_error must be positive");
    if (n_workers < 1) throw ContractError("QuadControl: n_workers must be >= 1");
}

double pdf_rmin(const PlacementModel& pm, double r) {
    check_densities(pm);
    const double R = pm.cell_radius_m;
    if (r < 0.0 || r > R) return 0.0;
    const double u = r / R;
    return pm.n_users * std::pow(1.0 - u * u, pm.n_users - 1) * 2.0 * r / (R * R);
}

double pdf_rmax(const PlacementModel& pm, double r) {
    check_densities(pm);
    const double R = pm.cell_radius_m;
    if (r < 0.0 || r > R) return 0.0;
    const double u = r / R;
    return pm.n_users * std::pow(u * u, pm.n_users - 1) * 2.0 * r / (R * R);
}

double cdf_rmin(const PlacementModel& pm, double r) {
    check_densities(pm);
    const double u = std::clamp(r / pm.cell_radius_m, 0.0, 1.0);
    return -std::expm1(pm.n_users * std::log1p(-u * u));
}

double cdf_rmax(const PlacementModel& pm, double r) {
    check_densities(pm);
    const double u = std::clamp(r / pm.cell_radius_m, 0.0, 1.0);
    return std::pow(u, 2.0 * pm.n_users);
}

Interval support_rmin(const PlacementModel& pm, double tail) {
    check_densities(pm);
    if (tail <= 0.0) return {0.0, pm.cell_radius_m};
    // (1 - r^2/R^2)^N = tail
    const double u2 = -std::expm1(std::log(tail) / pm.n_users);
    return {0.0, pm.cell_radius_m * std::sqrt(std::min(u2, 1.0))};
}

Interval support_rmax(const PlacementModel& pm, double tail) {
    check_densities(pm);
    if (tail <= 0.0) return {0.0, pm.cell_radius_m};
    // (r/R)^(2N) = tail
    return {pm.cell_radius_m * std::exp(std::log(tail) / (2.0 * pm.n_users)), pm.cell_radius_m};
}

PlacementResult expected_outage(const PlacementModel& pm, const LinkScenario& tmpl, User user,
                                const QuadControl& quad, const specfun::SeriesControl& series) {
    return run(pm, tmpl, user, quad, series, quad.n_workers);
}

PlacementResult expected_outage_serial(const PlacementModel& pm, const LinkScenario& tmpl, User user,
                                       const QuadControl& quad, const specfun::SeriesControl& series) {
    return run(pm, tmpl, user, quad, series, 1);
}

mc::McEstimate simulate_placement_outage(const PlacementModel& pm, const LinkScenario& tmpl, User user,
                                         const mc::McConfig& cfg) {
    pm.validate();
    cfg.validate();
    const double R = pm.cell_radius_m;
    std::uint64_t hits = 0;
    const auto total = static_cast<std::int64_t>(cfg.n_samples);
#pragma omp parallel for schedule(static) reduction(+ : hits) num_threads(cfg.n_workers)
    for (std::int64_t i = 0; i < total; ++i) {
        auto rng = sample_stream(cfg.base_seed, static_cast<std::uint64_t>(i));
        double umin = 1.0;
        double umax = 0.0;
        for (int k = 0; k < pm.n_users; ++k) {
            const double u = uniform_open0(rng);
            umin = std::min(umin, u);
            umax = std::max(umax, u);
        }
        const LinkScenario s = at_radii(tmpl, R * std::sqrt(umin), R * std::sqrt(umax));
        const LinkBudget b = link_budget_unchecked(s);
        const double fn = fading::sample(b.fading_near, rng);
        const double ff = fading::sample(b.fading_far, rng);
        if (mc::spectral_efficiency(b, user, fn, ff) < b.target_rate) ++hits;
    }
    return mc::make_estimate(hits, cfg.n_samples);
}

} // namespace noma::placement
