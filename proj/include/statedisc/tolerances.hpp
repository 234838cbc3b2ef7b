// Copyright 2026 The statedisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>

#include "statedisc/errors.hpp"

namespace statedisc {

/// Numerical tolerances shared across the library.  All cutoffs that decide
/// rank are relative to the largest magnitude in play, so behavior is
/// scale-free.
struct ToleranceConfig {
    /// Residual-norm cutoff for Gram-Schmidt rank decisions (relative).
    double rank_tol = 1e-10;
    /// Singular values below this fraction of the largest are discarded.
    double svd_truncation_tol = 1e-12;
    /// Max-norm deviation from identity allowed for a unitary.
    double unitarity_tol = 1e-10;
    /// Allowed negative-eigenvalue floor for optimality certificates.
    double certificate_tol = 1e-7;
    /// Iteration cap for the minimum-error solver.
    int max_iterations = 10000;

    void validate() const {
        if (rank_tol <= 0 || svd_truncation_tol <= 0 || unitarity_tol <= 0 ||
            certificate_tol <= 0) {
            throw Error("ToleranceConfig: all tolerances must be strictly positive");
        }
        if (max_iterations < 1) {
            throw Error("ToleranceConfig: max_iterations must be >= 1");
        }
    }
};

}  // namespace statedisc
