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

#include "noma/specfun.hpp"

#include "noma/errors.hpp"
#include "noma/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace noma::specfun {
namespace {

constexpr int kFactorialTable = 1024;
constexpr double kUnderflowLog = -745.0;

const std::array<double, kFactorialTable + 1>& factorial_table() {
    static const auto table = [] {
        std::array<double, kFactorialTable + 1> t{};
        long double acc = 0.0L;
        t[0] = 0.0;
        for (int n = 1; n <= kFactorialTable; ++n) {
            acc += std::log(static_cast<long double>(n));
            t[n] = static_cast<double>(acc);
        }
        return t;
    }();
    return table;
}

void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) throw DomainError(std::string(who) + ": non-finite argument");
}

// sum_{k >= 0} Pois(k; outer) * P[Pois(inner) <= k - shift]
//
// All terms are nonnegative, so the sum keeps full relative accuracy. Past
// the outer mode the remaining Poisson mass is bounded by a geometric series.
double poisson_mixture(double outer, double inner, int shift) {
    const auto& lf = factorial_table();
    const double log_outer = std::log(outer);
    const double log_inner = inner > 0.0 ? std::log(inner) : 0.0;
    const int hard_cap = static_cast<int>(outer + inner + 60.0 * std::sqrt(outer + inner + 1.0)) + 200;

    double sum = 0.0;
    double inner_cdf = 0.0;
    int inner_next = 0; // next inner index to add into inner_cdf
    for (int k = 0; k <= hard_cap; ++k) {
        const int m = k - shift;
        while (inner_next <= m) {
            if (inner == 0.0) {
                inner_cdf = 1.0;
            } else {
                const double lfi = inner_next <= kFactorialTable ? lf[inner_next]
                                                                 : log_factorial(inner_next);
                const double lp = -inner + inner_next * log_inner - lfi;
                if (lp > kUnderflowLog) inner_cdf += std::exp(lp);
            }
            ++inner_next;
        }
        const double lfk = k <= kFactorialTable ? lf[k] : log_factorial(k);
        const double lw = -outer + k * log_outer - lfk;
        if (m >= 0 && lw > kUnderflowLog) sum += std::exp(lw) * std::min(inner_cdf, 1.0);

        if (k + 2 > outer) {
            const double lnext = -outer + (k + 1) * log_outer - (lfk + std::log(k + 1.0));
            const double tail = std::exp(lnext) / (1.0 - outer / (k + 2.0));
            if (tail <= 1e-17 * sum || lnext < kUnderflowLog) break;
        }
    }
    return sum;
}

double tricomi_exact_log(int n, int m, double z) {
    // (1/(n-1)!) sum_i C(m,i) (n+i-1)! z^-(n+i)
    const double lz = std::log(z);
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        const double lt = log_factorial(m) - log_factorial(i) - log_factorial(m - i) +
                          log_factorial(n + i - 1) - log_factorial(n - 1) - (n + i) * lz;
        terms[static_cast<std::size_t>(i)] = lt;
        peak = std::max(peak, lt);
    }
    double acc = 0.0;
    for (double lt : terms) acc += std::exp(lt - peak);
    return peak + std::log(acc);
}

double tricomi_quadrature_log(double a, double b, double z) {
    const double lga = log_gamma(a);
    const double c = b - a - 1.0;
    if (a >= 1.0) {
        // mode of -z t + (a-1) ln t + c ln(1+t)
        const double p = z - b + 2.0;
        double mode = (-p + std::sqrt(p * p + 4.0 * z * (a - 1.0))) / (2.0 * z);
        if (!(mode > 0.0)) mode = 0.0;
        auto log_f = [&](double t) {
            const double lt = (a == 1.0) ? 0.0 : (a - 1.0) * std::log(t);
            return -z * t + lt + c * std::log1p(t) - lga;
        };
        const double shift = log_f(std::max(mode, 1e-300));
        const double scale = std::max({mode, 1.0 / z, 1e-12});
        auto f = [&](double t) {
            if (t <= 0.0) return a == 1.0 ? std::exp(-lga - shift) : 0.0;
            const double v = log_f(t) - shift;
            return v < kUnderflowLog ? 0.0 : std::exp(v);
        };
        const auto est = quad::adaptive_to_infinity(f, 0.0, scale, 0.0, 1e-13, 4000);
        return shift + std::log(est.value);
    }
    // t = s^(1/a) removes the t^(a-1) endpoint singularity
    const double inv_a = 1.0 / a;
    const double shift = -std::log(a) - lga;
    auto f = [&](double s) {
        const double t = std::pow(s, inv_a);
        const double v = -z * t + c * std::log1p(t);
        return v < kUnderflowLog ? 0.0 : std::exp(v);
    };
    const double scale = std::pow(1.0 / z, a);
    const auto est = quad::adaptive_to_infinity(f, 0.0, scale, 0.0, 1e-13, 4000);
    return shift + std::log(est.value);
}

double as_integer(double x) {
    return std::nearbyint(x) == x ? x : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0)) throw ContractError("SeriesControl: rel_tol must be positive");
    if (max_terms < 1) throw ContractError("SeriesControl: max_terms must be at least 1");
}

double log_bessel_i0(double x) {
    require_finite(x, "log_bessel_i0");
    if (x < 0.0) throw DomainError("log_bessel_i0: negative argument");
    if (x <= 30.0) return std::log(bessel_i0(x));
    // I0(x) ~ e^x / sqrt(2 pi x) * sum_k ((2k-1)!!)^2 / (k! (8x)^k)
    double term = 1.0;
    double acc = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double ratio = (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * x * k);
        if (ratio >= 1.0) break;
        term *= ratio;
        acc += term;
        if (term < 1e-17 * (1.0 + acc)) break;
    }
    return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log1p(acc);
}

double bessel_i0(double x) {
    require_finite(x, "bessel_i0");
    if (x < 0.0) throw DomainError("bessel_i0: negative argument");
    if (x > 30.0) return std::exp(log_bessel_i0(x));
    const double q = 0.25 * x * x;
    double term = 1.0;
    double acc = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        acc += term;
        if (term < 1e-17 * acc) break;
    }
    return acc;
}

double marcum_q1(double a, double b) {
    require_finite(a, "marcum_q1");
    require_finite(b, "marcum_q1");
    if (a < 0.0 || b < 0.0) throw DomainError("marcum_q1: negative argument");
    if (b == 0.0) return 1.0;
    if (a == 0.0) return std::exp(-0.5 * b * b);
    if (b < a) return 1.0 - marcum_q1_complement(a, b);
    if (0.5 * (b - a) * (b - a) > -kUnderflowLog) return 0.0;
    return std::clamp(poisson_mixture(0.5 * a * a, 0.5 * b * b, 0), 0.0, 1.0);
}

double marcum_q1_complement(double a, double b) {
    require_finite(a, "marcum_q1_complement");
    require_finite(b, "marcum_q1_complement");
    if (a < 0.0 || b < 0.0) throw DomainError("marcum_q1_complement: negative argument");
    if (b == 0.0) return 0.0;
    if (a == 0.0) return -std::expm1(-0.5 * b * b);
    if (b >= a) return 1.0 - marcum_q1(a, b);
    if (0.5 * (a - b) * (a - b) > -kUnderflowLog) return 0.0;
    return std::clamp(poisson_mixture(0.5 * b * b, 0.5 * a * a, 1), 0.0, 1.0);
}

double log_tricomi_u(double a, double b, double z) {
    require_finite(a, "tricomi_u");
    require_finite(b, "tricomi_u");
    require_finite(z, "tricomi_u");
    if (a <= 0.0) throw DomainError("tricomi_u: a must be positive");
    if (z <= 0.0) throw DomainError("tricomi_u: z must be positive");
    const double n = as_integer(a);
    const double m = as_integer(b - a - 1.0);
    if (n >= 1.0 && m >= 0.0 && n < 1e6 && m < 1e5)
        return tricomi_exact_log(static_cast<int>(n), static_cast<int>(m), z);
    return tricomi_quadrature_log(a, b, z);
}

double tricomi_u(double a, double b, double z) { return std::exp(log_tricomi_u(a, b, z)); }

double tricomi_u_quadrature(double a, double b, double z) {
    require_finite(a, "tricomi_u");
    require_finite(b, "tricomi_u");
    require_finite(z, "tricomi_u");
    if (a <= 0.0) throw DomainError("tricomi_u: a must be positive");
    if (z <= 0.0) throw DomainError("tricomi_u: z must be positive");
    return std::exp(tricomi_quadrature_log(a, b, z));
}

double log_gamma(double x) {
    require_finite(x, "log_gamma");
    if (x <= 0.0) throw DomainError("log_gamma: argument must be positive");
    if (x <= kFactorialTable + 1 && std::nearbyint(x) == x)
        return factorial_table()[static_cast<std::size_t>(x) - 1];
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double log_factorial(int n) {
    if (n < 0) throw DomainError("log_factorial: negative argument");
    if (n <= kFactorialTable) return factorial_table()[static_cast<std::size_t>(n)];
    return log_gamma(n + 1.0);
}

} // namespace noma::specfun
