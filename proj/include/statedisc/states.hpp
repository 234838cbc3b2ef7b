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

#include <cmath>
#include <vector>

#include "statedisc/linalg.hpp"

namespace statedisc {

/// A normalized pure state on a d-dimensional space.
struct PureState {
    Vec amplitudes;

    PureState() = default;
    explicit PureState(Vec a, bool renormalize = false) : amplitudes(std::move(a)) {
        if (amplitudes.size() == 0) throw EmptyInput("PureState: empty amplitude vector");
        double n = amplitudes.norm();
        if (n == 0.0) throw ZeroState("PureState: zero vector");
        if (renormalize) {
            amplitudes /= n;
        } else if (std::abs(n - 1.0) > 1e-12) {
            throw Error("PureState: vector not normalized");
        }
    }

    Index dim() const { return amplitudes.size(); }
    Mat density() const { return amplitudes * amplitudes.adjoint(); }
};

/// K pure-state hypotheses with strictly positive priors summing to one.
struct Ensemble {
    std::vector<PureState> states;
    std::vector<double> priors;

    Ensemble() = default;
    Ensemble(std::vector<PureState> s, std::vector<double> p)
        : states(std::move(s)), priors(std::move(p)) {
        if (states.empty()) throw EmptyInput("Ensemble: no hypotheses");
        if (priors.size() != states.size())
            throw DimensionMismatch("Ensemble: priors/states length mismatch");
        double sum = 0.0;
        for (double q : priors) {
            if (q < 1e-12) throw InvalidPrior("Ensemble: prior below 1e-12");
            sum += q;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw InvalidPrior("Ensemble: priors do not sum to 1");
        const Index d = states[0].dim();
        for (const auto& st : states)
            if (st.dim() != d) throw DimensionMismatch("Ensemble: mixed state dimensions");
    }

    Index size() const { return static_cast<Index>(states.size()); }
    Index dim() const { return states[0].dim(); }

    static std::vector<double> uniform_priors(size_t k) {
        return std::vector<double>(k, 1.0 / static_cast<double>(k));
    }
};

/// Pairwise inner products <psi_j|psi_k>; the complete invariant of a
/// pure-state ensemble up to a global unitary.
inline Mat gram_matrix(const Ensemble& e) {
    const Index k = e.size();
    Mat g(k, k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            g(i, j) = e.states[static_cast<size_t>(i)].amplitudes.dot(
                e.states[static_cast<size_t>(j)].amplitudes);
    return g;
}

inline Mat gram_matrix(const std::vector<Vec>& vectors) {
    const Index k = static_cast<Index>(vectors.size());
    Mat g(k, k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            g(i, j) = vectors[static_cast<size_t>(i)].dot(vectors[static_cast<size_t>(j)]);
    return g;
}

}  // namespace statedisc
