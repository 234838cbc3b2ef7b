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

#include <random>
#include <vector>

#include "statedisc/mps.hpp"
#include "statedisc/states.hpp"

namespace testutil {

using statedisc::cxd;
using statedisc::Index;
using statedisc::Mat;
using statedisc::Vec;

inline Vec random_vector(std::mt19937& rng, Index dim) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Vec v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = cxd(nd(rng), nd(rng));
    return v;
}

inline statedisc::PureState random_state(std::mt19937& rng, Index dim) {
    return statedisc::PureState(random_vector(rng, dim), true);
}

inline statedisc::Ensemble random_ensemble(std::mt19937& rng, Index k, Index dim,
                                           bool uniform_priors = true) {
    std::vector<statedisc::PureState> states;
    for (Index i = 0; i < k; ++i) states.push_back(random_state(rng, dim));
    std::vector<double> priors;
    if (uniform_priors) {
        priors = statedisc::Ensemble::uniform_priors(static_cast<size_t>(k));
    } else {
        std::uniform_real_distribution<double> ud(0.2, 1.0);
        double sum = 0.0;
        for (Index i = 0; i < k; ++i) {
            priors.push_back(ud(rng));
            sum += priors.back();
        }
        for (double& p : priors) p /= sum;
    }
    return statedisc::Ensemble(std::move(states), std::move(priors));
}

/// Random MPS with qubit sites and the requested bond dimension, normalized.
inline statedisc::Mps random_mps(std::mt19937& rng, Index n_sites, Index bond,
                                 Index phys = 2) {
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<statedisc::SiteTensor> sites;
    for (Index s = 0; s < n_sites; ++s) {
        const Index l = (s == 0) ? 1 : bond;
        const Index r = (s == n_sites - 1) ? 1 : bond;
        std::vector<Mat> mats;
        for (Index p = 0; p < phys; ++p) {
            Mat a(l, r);
            for (Index i = 0; i < l; ++i)
                for (Index j = 0; j < r; ++j) a(i, j) = cxd(nd(rng), nd(rng));
            mats.push_back(std::move(a));
        }
        sites.emplace_back(std::move(mats));
    }
    statedisc::Mps mps(std::move(sites));
    const double nrm = statedisc::mps_norm(mps);
    for (auto& a : mps.sites[0].m) a /= nrm;
    return mps;
}

inline statedisc::Ensemble zero_plus_ensemble() {
    Vec zero(2), plus(2);
    zero << 1.0, 0.0;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return statedisc::Ensemble({statedisc::PureState(zero), statedisc::PureState(plus, true)},
                               {0.5, 0.5});
}

}  // namespace testutil
