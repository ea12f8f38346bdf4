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

#include "noma/rng.hpp"

#include <cmath>
#include <variant>

namespace noma::fading {

// Exponential power gain, pdf lambda exp(-lambda x).
struct Rayleigh {
    double lambda = 1.0;
};

// Noncentral chi-square power gain with two degrees of freedom:
// Rice factor K and mean power omega.
struct Rician {
    double k_factor = 0.0;
    double omega = 1.0;
};

class FadingSpec {
  public:
    FadingSpec() = default;

    static FadingSpec rayleigh(double lambda);
    static FadingSpec rician(double k_factor, double omega);

    bool is_rayleigh() const { return std::holds_alternative<Rayleigh>(law_); }
    bool is_rician() const { return std::holds_alternative<Rician>(law_); }
    const Rayleigh& as_rayleigh() const { return std::get<Rayleigh>(law_); }
    const Rician& as_rician() const { return std::get<Rician>(law_); }

    // Rayleigh(lambda) is Rician(K = 0, omega = 1/lambda).
    Rician to_rician() const;

    double mean() const;

  private:
    explicit FadingSpec(std::variant<Rayleigh, Rician> law) : law_(law) {}
    std::variant<Rayleigh, Rician> law_{Rayleigh{}};
};

double cdf(const FadingSpec& spec, double x);
double pdf(const FadingSpec& spec, double x);
double log_pdf(const FadingSpec& spec, double x);

// One power-gain draw. Rician uses the LOS component plus complex Gaussian
// scatter; Rayleigh inverts the exponential CDF.
template <class Rng>
double sample(const FadingSpec& spec, Rng& rng) {
    if (spec.is_rayleigh()) return -std::log(uniform_open0(rng)) / spec.as_rayleigh().lambda;
    const Rician& r = spec.as_rician();
    const double sigma = std::sqrt(r.omega / (2.0 * (1.0 + r.k_factor)));
    const double los = std::sqrt(r.k_factor * r.omega / (1.0 + r.k_factor));
    double g0 = 0.0;
    double g1 = 0.0;
    normal_pair(rng, g0, g1);
    const double re = los + sigma * g0;
    const double im = sigma * g1;
    return re * re + im * im;
}

} // namespace noma::fading
