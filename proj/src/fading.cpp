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

#include "noma/fading.hpp"

#include "noma/errors.hpp"
#include "noma/specfun.hpp"

#include <cmath>
#include <limits>

namespace noma::fading {

FadingSpec FadingSpec::rayleigh(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ContractError("Rayleigh: lambda must be positive");
    return FadingSpec(Rayleigh{lambda});
}

FadingSpec FadingSpec::rician(double k_factor, double omega) {
    if (!(k_factor >= 0.0) || !std::isfinite(k_factor)) throw ContractError("Rician: K must be >= 0");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ContractError("Rician: omega must be positive");
    return FadingSpec(Rician{k_factor, omega});
}

Rician FadingSpec::to_rician() const {
    if (is_rician()) return as_rician();
    return Rician{0.0, 1.0 / as_rayleigh().lambda};
}

double FadingSpec::mean() const { return is_rayleigh() ? 1.0 / as_rayleigh().lambda : as_rician().omega; }

double cdf(const FadingSpec& spec, double x) {
    if (!(x >= 0.0)) throw DomainError("fading cdf: negative power gain");
    if (std::isinf(x)) return 1.0;
    if (spec.is_rayleigh()) return -std::expm1(-spec.as_rayleigh().lambda * x);
    const Rician& r = spec.as_rician();
    const double a = std::sqrt(2.0 * r.k_factor);
    const double b = std::sqrt(2.0 * (1.0 + r.k_factor) * x / r.omega);
    return specfun::marcum_q1_complement(a, b);
}

double log_pdf(const FadingSpec& spec, double x) {
    if (!(x >= 0.0)) throw DomainError("fading pdf: negative power gain");
    if (spec.is_rayleigh()) {
        const double lam = spec.as_rayleigh().lambda;
        return std::log(lam) - lam * x;
    }
    const Rician& r = spec.as_rician();
    const double n = (1.0 + r.k_factor) / r.omega;
    return std::log(n) - r.k_factor - n * x +
           specfun::log_bessel_i0(2.0 * std::sqrt(r.k_factor * n * x));
}

double pdf(const FadingSpec& spec, double x) {
    if (std::isinf(x)) return 0.0;
    return std::exp(log_pdf(spec, x));
}

} // namespace noma::fading
