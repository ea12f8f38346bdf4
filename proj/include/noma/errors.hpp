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

#include <stdexcept>
#include <string>

namespace noma {

// Argument outside the mathematical domain of a function (negative radius,
// non-finite input, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Inconsistent scenario: wrong scheme for the operation, invalid power split.
class ContractError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A series did not reach its tolerance within the term budget. The neglected
// mass at the point of giving up is carried along.
class TruncationError : public std::runtime_error {
  public:
    TruncationError(const std::string& what, double bound)
        : std::runtime_error(what), bound_(bound) {}
    double bound() const noexcept { return bound_; }

  private:
    double bound_;
};

// Numerical integration failed to meet its tolerance.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

} // namespace noma
