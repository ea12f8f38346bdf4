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

#include "noma/outage.hpp"

#include "noma/errors.hpp"
#include "noma/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace noma {
namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ContractError(std::string(what) + " must be positive");
}

void check_powers(Direction dir, const Powers& p) {
    if (dir == Direction::downlink) {
        require_positive(p.total, "downlink total power");
    } else {
        require_positive(p.near, "uplink near-user power");
        require_positive(p.far, "uplink far-user power");
    }
}

void check_rate(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ContractError("target rate must be finite and >= 0");
}

OutageResult closed(double p) { return {std::clamp(p, 0.0, 1.0), Method::closed_form, 0, 0.0, false}; }

// Poisson(k; mean) weights for k = 0..M, M the first index at which the
// remaining mass is provably below `tail_tol`.
struct PoissonAxis {
    std::vector<double> weights;
    double tail = 0.0;
};

PoissonAxis poisson_axis(double mean, double tail_tol, int max_terms) {
    PoissonAxis axis;
    if (mean == 0.0) {
        axis.weights = {1.0};
        return axis;
    }
    const double lm = std::log(mean);
    for (int k = 0; k < max_terms; ++k) {
        axis.weights.push_back(std::exp(-mean + k * lm - specfun::log_factorial(k)));
        if (k + 2 > mean) {
            const double next = std::exp(-mean + (k + 1) * lm - specfun::log_factorial(k + 1));
            axis.tail = next / (1.0 - mean / (k + 2.0));
            if (axis.tail <= tail_tol) return axis;
        } else {
            axis.tail = 1.0;
        }
    }
    throw TruncationError("Poisson axis with mean " + std::to_string(mean) + " did not converge within " +
                              std::to_string(max_terms) + " terms",
                          axis.tail);
}

double truncated_mass_bound(const PoissonAxis& a, const PoissonAxis& b) {
    return a.tail + b.tail - a.tail * b.tail;
}

} // namespace

std::string_view to_string(Direction d) { return d == Direction::uplink ? "uplink" : "downlink"; }
std::string_view to_string(Domain d) { return d == Domain::terrestrial ? "terrestrial" : "aerial"; }
std::string_view to_string(Scheme s) { return s == Scheme::noma ? "noma" : "oma"; }
std::string_view to_string(User u) { return u == User::near ? "near" : "far"; }

std::string_view to_string(Method m) {
    switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::series: return "series";
    case Method::quadrature: return "quadrature";
    case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

void LinkScenario::validate() const {
    env.validate();
    if (!(geometry.altitude_m >= 0.0)) throw ContractError("altitude must be >= 0");
    if (!(geometry.r_near_m >= 0.0) || !(geometry.r_far_m >= 0.0))
        throw ContractError("user distances must be >= 0");
    if (geometry.r_near_m > geometry.r_far_m) throw ContractError("near user must not be farther than far user");
    check_powers(direction, powers);
    check_rate(target_rate);
}

void LinkBudget::validate() const {
    require_positive(gain_near, "near-user gain");
    require_positive(gain_far, "far-user gain");
    check_powers(direction, powers);
    check_rate(target_rate);
}

double large_scale_gain(const LinkScenario& scn, User user) {
    const double r = user == User::near ? scn.geometry.r_near_m : scn.geometry.r_far_m;
    if (scn.domain == Domain::terrestrial)
        return channel::channel_gain(channel::terrestrial_path_loss_db(scn.env, r));
    return channel::channel_gain(channel::aerial_path_loss_db(scn.env, scn.geometry.altitude_m, r));
}

LinkBudget link_budget(const LinkScenario& scn) {
    scn.validate();
    return link_budget_unchecked(scn);
}

LinkBudget link_budget_unchecked(const LinkScenario& scn) {
    LinkBudget b;
    b.direction = scn.direction;
    b.scheme = scn.scheme;
    b.gain_near = large_scale_gain(scn, User::near);
    b.gain_far = large_scale_gain(scn, User::far);
    b.powers = scn.powers;
    b.target_rate = scn.target_rate;
    b.fading_near = scn.fading_near;
    b.fading_far = scn.fading_far;
    return b;
}

double sinr_threshold(double target_rate) { return std::expm1(target_rate * std::numbers::ln2); }

UplinkAlphas uplink_alphas(double g1, double g2, double p1, double p2, double target_rate) {
    const double s = sinr_threshold(target_rate);
    return {s * p2 * g2 / (p1 * g1), s / (p1 * g1)};
}

OutageResult oma_outage(const LinkBudget& link, User user) {
    if (link.scheme != Scheme::oma) throw ContractError("oma_outage: scenario scheme is not OMA");
    link.validate();
    if (link.target_rate == 0.0) return closed(0.0);
    // half the time per user: 0.5 log2(1 + snr) >= R  <=>  snr >= 2^(2R) - 1
    const double p = link.direction == Direction::downlink
                         ? link.powers.total
                         : (user == User::near ? link.powers.near : link.powers.far);
    const double x = sinr_threshold(2.0 * link.target_rate) / (p * link.gain(user));
    return closed(fading::cdf(link.fading(user), x));
}

OutageResult dl_noma_outage(const LinkBudget& link, User user) {
    if (link.direction != Direction::downlink || link.scheme != Scheme::noma)
        throw ContractError("dl_noma_outage: scenario is not downlink NOMA");
    link.validate();
    const double a1 = link.powers.split_near;
    if (!(a1 > 0.0 && a1 < 1.0)) throw ContractError("dl_noma_outage: power split a1 must lie in (0, 1)");
    if (link.target_rate == 0.0) return closed(0.0);
    const double s = sinr_threshold(link.target_rate);
    const double p = link.powers.total;
    if (user == User::near) return closed(fading::cdf(link.fading_near, s / (a1 * p * link.gain_near)));
    const double a2 = link.powers.split_far();
    const double margin = a2 - s * a1;
    if (margin <= 0.0) {
        OutageResult r = closed(1.0);
        r.infeasible = true;
        return r;
    }
    return closed(fading::cdf(link.fading_far, (s / (p * link.gain_far)) / margin));
}

OutageResult ul_noma_outage_far(const LinkBudget& link) {
    if (link.direction != Direction::uplink || link.scheme != Scheme::noma)
        throw ContractError("ul_noma_outage_far: scenario is not uplink NOMA");
    link.validate();
    if (link.target_rate == 0.0) return closed(0.0);
    const double alpha = sinr_threshold(link.target_rate) / (link.powers.far * link.gain_far);
    return closed(fading::cdf(link.fading_far, alpha));
}

OutageResult ul_near_terrestrial(UplinkAlphas al, double lambda1, double lambda2) {
    require_positive(lambda1, "lambda1");
    require_positive(lambda2, "lambda2");
    if (!(al.alpha1 >= 0.0) || !(al.alpha2 >= 0.0)) throw ContractError("alphas must be >= 0");
    // 1 - l2 e^(-a2 l1) / (l2 + a1 l1), rearranged so both numerator terms are >= 0
    const double den = lambda2 + al.alpha1 * lambda1;
    return closed((al.alpha1 * lambda1 - lambda2 * std::expm1(-al.alpha2 * lambda1)) / den);
}

OutageResult ul_noma_outage_near_terrestrial(double g1, double g2, double p1, double p2,
                                             double target_rate, double lambda1, double lambda2) {
    require_positive(g1, "g1");
    require_positive(g2, "g2");
    require_positive(p1, "p1");
    require_positive(p2, "p2");
    check_rate(target_rate);
    return ul_near_terrestrial(uplink_alphas(g1, g2, p1, p2, target_rate), lambda1, lambda2);
}

OutageResult ul_near_aerial(UplinkAlphas al, const fading::Rician& near, const fading::Rician& far,
                            const specfun::SeriesControl& ctl) {
    ctl.validate();
    if (!(al.alpha1 >= 0.0) || !(al.alpha2 >= 0.0)) throw ContractError("alphas must be >= 0");
    if (al.alpha2 == 0.0 && al.alpha1 == 0.0) return {0.0, Method::series, 0, 0.0, false};
    if (al.alpha1 == 0.0) {
        // y < alpha2 regardless of x
        return closed(fading::cdf(fading::FadingSpec::rician(near.k_factor, near.omega), al.alpha2));
    }

    const double n1 = (1.0 + near.k_factor) / near.omega;
    const double n2 = (1.0 + far.k_factor) / far.omega;
    const PoissonAxis w1 = poisson_axis(near.k_factor, 0.5 * ctl.rel_tol, ctl.max_terms);
    const PoissonAxis w2 = poisson_axis(far.k_factor, 0.5 * ctl.rel_tol, ctl.max_terms);
    const int m1 = static_cast<int>(w1.weights.size()) - 1;
    const int m2 = static_cast<int>(w2.weights.size()) - 1;

    // e[k2] holds E(k2, j) = P{Pois(n1 (alpha1 X + alpha2)) = j}, X ~ Gamma(k2 + 1, n2).
    // In terms of the Tricomi function,
    //   E(k2, j) = e^(-n1 a2) (n1 a2)^j / j! (n2 a2 / a1)^(k2+1) U(k2+1, k2+j+2, z),
    // z = (n2 + n1 a1) a2 / a1, and the contiguous relation of U in its second
    // argument becomes the positive two-term recurrence below.
    const double rho = n2 / (n2 + n1 * al.alpha1);
    const double shape = n1 * al.alpha2;
    const double cross = n1 * al.alpha1 / n2;
    const int width = m1 + m2 + 1;
    std::vector<double> e(static_cast<std::size_t>(width));
    const double lead = std::exp(-shape);
    double rp = rho;
    for (int k2 = 0; k2 < width; ++k2) {
        e[k2] = rp * lead;
        rp *= rho;
    }

    // s[k2] accumulates S(k1, k2) = sum_{j <= k1} E(k2, j) as k1 advances.
    std::vector<double> s(static_cast<std::size_t>(m2) + 1, 0.0);
    std::vector<double> inner(static_cast<std::size_t>(m2) + 1, 0.0); // sum_k1 w1 (1 - S)
    for (int k1 = 0; k1 <= m1; ++k1) {
        for (int k2 = 0; k2 <= m2; ++k2) {
            s[k2] += e[k2];
            inner[k2] += w1.weights[k1] * std::max(0.0, 1.0 - s[k2]);
        }
        if (k1 == m1) break;
        const int live = width - k1 - 1;
        for (int k2 = 0; k2 < live; ++k2)
            e[k2] = (shape * e[k2] + (k2 + 1.0) * cross * e[k2 + 1]) / (k1 + 1.0);
    }

    double p = 0.0;
    for (int k2 = 0; k2 <= m2; ++k2) p += w2.weights[k2] * inner[k2];

    OutageResult r;
    r.method = Method::series;
    r.terms_used = (m1 + 1) * (m2 + 1);
    r.truncation_bound = truncated_mass_bound(w1, w2);
    r.probability = std::clamp(p, 0.0, 1.0);
    return r;
}

OutageResult ul_near_aerial_tricomi(UplinkAlphas al, const fading::Rician& near, const fading::Rician& far,
                                    const specfun::SeriesControl& ctl) {
    ctl.validate();
    if (!(al.alpha1 > 0.0) || !(al.alpha2 > 0.0))
        throw ContractError("ul_near_aerial_tricomi: alphas must be positive");
    const double n1 = (1.0 + near.k_factor) / near.omega;
    const double n2 = (1.0 + far.k_factor) / far.omega;
    const PoissonAxis w1 = poisson_axis(near.k_factor, 0.5 * ctl.rel_tol, ctl.max_terms);
    const PoissonAxis w2 = poisson_axis(far.k_factor, 0.5 * ctl.rel_tol, ctl.max_terms);
    const double z = (n2 + n1 * al.alpha1) * al.alpha2 / al.alpha1;
    const double lshape = std::log(n1 * al.alpha2);
    const double lscale = std::log(n2 * al.alpha2 / al.alpha1);

    double p = 0.0;
    for (std::size_t k1 = 0; k1 < w1.weights.size(); ++k1) {
        for (std::size_t k2 = 0; k2 < w2.weights.size(); ++k2) {
            double survive = 0.0;
            for (std::size_t j = 0; j <= k1; ++j) {
                const double lt = -n1 * al.alpha2 + j * lshape - specfun::log_factorial(static_cast<int>(j)) +
                                  (k2 + 1.0) * lscale +
                                  specfun::log_tricomi_u(k2 + 1.0, k2 + j + 2.0, z);
                survive += std::exp(lt);
            }
            p += w1.weights[k1] * w2.weights[k2] * std::max(0.0, 1.0 - survive);
        }
    }
    OutageResult r;
    r.method = Method::series;
    r.terms_used = static_cast<int>(w1.weights.size() * w2.weights.size());
    r.truncation_bound = truncated_mass_bound(w1, w2);
    r.probability = std::clamp(p, 0.0, 1.0);
    return r;
}

OutageResult ul_near_quadrature(UplinkAlphas al, const fading::FadingSpec& near, const fading::FadingSpec& far) {
    if (!(al.alpha1 >= 0.0) || !(al.alpha2 >= 0.0)) throw ContractError("alphas must be >= 0");
    if (al.alpha1 == 0.0 && al.alpha2 == 0.0) return {0.0, Method::quadrature, 0, 0.0, false};
    auto integrand = [&](double x) {
        const double lp = fading::log_pdf(far, x);
        if (lp < -745.0) return 0.0;
        return fading::cdf(near, al.alpha1 * x + al.alpha2) * std::exp(lp);
    };
    // split at the far-user mean so the peak is resolved on both sides
    const double mid = far.mean();
    const auto lo = quad::adaptive(integrand, 0.0, mid, 1e-14, 1e-12);
    const auto hi = quad::adaptive_to_infinity(integrand, mid, mid, 1e-14, 1e-12);
    OutageResult r;
    r.method = Method::quadrature;
    r.truncation_bound = lo.error + hi.error;
    r.probability = std::clamp(lo.value + hi.value, 0.0, 1.0);
    return r;
}

OutageResult ul_noma_outage_near_aerial(double g1, double g2, double p1, double p2, double target_rate,
                                        const fading::FadingSpec& near, const fading::FadingSpec& far,
                                        const specfun::SeriesControl& ctl) {
    require_positive(g1, "g1");
    require_positive(g2, "g2");
    require_positive(p1, "p1");
    require_positive(p2, "p2");
    check_rate(target_rate);
    return ul_near_aerial(uplink_alphas(g1, g2, p1, p2, target_rate), near.to_rician(), far.to_rician(), ctl);
}

OutageResult ul_noma_outage_near(const LinkBudget& link, const specfun::SeriesControl& ctl) {
    if (link.direction != Direction::uplink || link.scheme != Scheme::noma)
        throw ContractError("ul_noma_outage_near: scenario is not uplink NOMA");
    link.validate();
    if (link.target_rate == 0.0) return closed(0.0);
    const UplinkAlphas al =
        uplink_alphas(link.gain_near, link.gain_far, link.powers.near, link.powers.far, link.target_rate);
    if (link.fading_near.is_rayleigh() && link.fading_far.is_rayleigh())
        return ul_near_terrestrial(al, link.fading_near.as_rayleigh().lambda, link.fading_far.as_rayleigh().lambda);
    return ul_near_aerial(al, link.fading_near.to_rician(), link.fading_far.to_rician(), ctl);
}

OutageResult outage(const LinkBudget& link, User user, const specfun::SeriesControl& ctl) {
    if (link.scheme == Scheme::oma) return oma_outage(link, user);
    if (link.direction == Direction::downlink) return dl_noma_outage(link, user);
    return user == User::near ? ul_noma_outage_near(link, ctl) : ul_noma_outage_far(link);
}

OutageResult outage(const LinkScenario& scn, User user, const specfun::SeriesControl& ctl) {
    return outage(link_budget(scn), user, ctl);
}

double noma_gain(const OutageResult& oma, const OutageResult& noma) { return oma.probability - noma.probability; }

} // namespace noma
