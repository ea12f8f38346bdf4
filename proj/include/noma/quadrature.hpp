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

#include <functional>
#include <vector>

namespace noma::quad {

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7/15) with global bisection of the worst interval.
// Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|).
Estimate adaptive(const Integrand& f, double a, double b, double abs_tol = 1e-13,
                  double rel_tol = 1e-12, int max_intervals = 2000);

// int_a^inf f, through x = a + scale * t / (1 - t). `scale` should be of the
// order of the integrand's width.
Estimate adaptive_to_infinity(const Integrand& f, double a, double scale = 1.0,
                              double abs_tol = 1e-13, double rel_tol = 1e-12,
                              int max_intervals = 2000);

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);

// The same rule mapped onto [a, b].
Rule gauss_legendre(int n, double a, double b);

} // namespace noma::quad
