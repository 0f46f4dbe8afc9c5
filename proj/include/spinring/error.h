// Copyright 2026 The spinring Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINRING_ERROR_H
#define SPINRING_ERROR_H

#include <stdexcept>
#include <string>

namespace spinring {

/// Index or site outside its valid range.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Mismatched lengths, dimensions or ring systems.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Physically or structurally invalid parameters.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An eigenvalue iteration that did not converge.
struct IterationError : std::runtime_error {
    IterationError(const std::string &what, int iterations, double residual)
        : std::runtime_error(what), iterations(iterations), residual(residual) {}
    int iterations;
    double residual;
};

/// Time evolution that could not reach its tolerance within the term budget.
struct PropagationError : std::runtime_error {
    PropagationError(const std::string &what, double achieved_residual)
        : std::runtime_error(what), achieved_residual(achieved_residual) {}
    double achieved_residual;
};

/// A layout or size request that does not fit.
struct CapacityError : std::runtime_error {
    CapacityError(const std::string &what, long long minimal_n)
        : std::runtime_error(what), minimal_n(minimal_n) {}
    long long minimal_n;
};

/// Bad command line or configuration file contents.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spinring

#endif
