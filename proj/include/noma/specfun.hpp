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

// Special functions behind the outage expressions: modified Bessel I0,
// first-order Marcum Q, Tricomi's confluent hypergeometric U and log-gamma.
// Everything here is a pure function of its arguments.

namespace noma::specfun {

// Truncation control for the infinite double series of the uplink aerial
// near-user outage.
struct SeriesControl {
    double rel_tol = 1e-10;
    int max_terms = 512;

    void validate() const;
};

double bessel_i0(double x);

// ln I0(x); stays finite where I0 itself overflows.
double log_bessel_i0(double x);

// Q1(a, b) = int_b^inf x exp(-(a^2 + x^2)/2) I0(a x) dx.
double marcum_q1(double a, double b);

// 1 - Q1(a, b), summed directly so that small values keep full relative
// accuracy. This is the CDF kernel of the Rician power law.
double marcum_q1_complement(double a, double b);

// U(a, b, z) = 1/Gamma(a) int_0^inf exp(-z t) t^(a-1) (1+t)^(b-a-1) dt,
// a > 0, z > 0. When a is a positive integer and b - a - 1 a nonnegative
// integer the integrand is a polynomial times an exponential and the integral
// is summed exactly; otherwise adaptive quadrature is used.
double tricomi_u(double a, double b, double z);
double log_tricomi_u(double a, double b, double z);

// Quadrature route only; exposed so the two routes can be compared.
double tricomi_u_quadrature(double a, double b, double z);

double log_gamma(double x);

// ln(n!) from a precomputed table (n <= 1024) or log_gamma beyond.
double log_factorial(int n);

} // namespace noma::specfun
