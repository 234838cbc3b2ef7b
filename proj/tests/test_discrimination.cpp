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

#include <catch2/catch_amalgamated.hpp>

#include "statedisc/discrimination.hpp"
#include "test_helpers.hpp"

using namespace statedisc;

namespace {

Ensemble trine() {
    std::vector<PureState> states;
    for (int k = 0; k < 3; ++k) {
        const double th = 2.0 * M_PI * k / 3.0;
        Vec v(2);
        v << std::cos(th / 2.0), std::sin(th / 2.0);
        states.emplace_back(v, true);
    }
    return Ensemble(states, Ensemble::uniform_priors(3));
}

// Brute-force search over two-outcome projective measurements in the plane,
// used as an independent oracle for real qubit pairs.
double projective_oracle(const Ensemble& e) {
    double best = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double th = M_PI * i / 20000.0;
        Vec a(2), b(2);
        a << std::cos(th), std::sin(th);
        b << -std::sin(th), std::cos(th);
        const auto& s0 = e.states[0].amplitudes;
        const auto& s1 = e.states[1].amplitudes;
        const double p = e.priors[0] * std::norm(a.dot(s0)) +
                         e.priors[1] * std::norm(b.dot(s1));
        best = std::max(best, std::max(p, e.priors[0] * std::norm(b.dot(s0)) +
                                              e.priors[1] * std::norm(a.dot(s1))));
    }
    return best;
}

}  // namespace

TEST_CASE("Helstrom closed form on |0> vs |+>") {
    auto e = testutil::zero_plus_ensemble();
    auto r = helstrom_two_state(e);
    CHECK(r.success_probability ==
          Catch::Approx(0.5 * (1.0 + std::sqrt(0.5))).margin(1e-12));
    CHECK(r.certificate_residual <= 1e-10);
    CHECK(r.povm.psd_violation() <= 1e-10);
    CHECK(r.povm.completeness_defect() <= 1e-10);
}

TEST_CASE("Helstrom on orthogonal states is perfect") {
    Vec zero(2), one(2);
    zero << 1.0, 0.0;
    one << 0.0, 1.0;
    Ensemble e({PureState(zero), PureState(one)}, {0.3, 0.7});
    CHECK(helstrom_two_state(e).success_probability == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("Helstrom on identical states returns the larger prior") {
    Vec zero(2);
    zero << 1.0, 0.0;
    Ensemble e({PureState(zero), PureState(zero)}, {0.7, 0.3});
    CHECK(helstrom_two_state(e).success_probability == Catch::Approx(0.7).margin(1e-12));
}

TEST_CASE("Helstrom matches the projective oracle for skewed priors") {
    Vec zero(2), plus(2);
    zero << 1.0, 0.0;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    Ensemble e({PureState(zero), PureState(plus, true)}, {0.25, 0.75});
    CHECK(helstrom_two_state(e).success_probability ==
          Catch::Approx(projective_oracle(e)).margin(1e-7));
}

TEST_CASE("min_error_povm agrees with Helstrom on random two-state ensembles") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const Index d = 2 + static_cast<Index>(rng() % 3);
        Ensemble e = testutil::random_ensemble(rng, 2, d, trial % 2 == 0);
        auto h = helstrom_two_state(e);
        auto m = min_error_povm(e);
        CHECK(std::abs(m.success_probability - h.success_probability) <= 1e-8);
        CHECK(m.converged);
    }
}

TEST_CASE("trine discrimination achieves 2/3") {
    auto r = min_error_povm(trine());
    CHECK(r.success_probability == Catch::Approx(2.0 / 3.0).margin(1e-6));
    CHECK(r.certificate_residual <= 1e-7);
    CHECK(r.povm.psd_violation() <= 1e-8);
    CHECK(r.povm.completeness_defect() <= 1e-8);
}

TEST_CASE("ykl_certificate rejects a suboptimal measurement") {
    auto e = testutil::zero_plus_ensemble();
    Povm naive;
    naive.effects = {Mat::Identity(2, 2) / 2.0, Mat::Identity(2, 2) / 2.0};
    naive.labels = {0, 1};
    CHECK(ykl_certificate(e, naive) > 1e-3);
}

TEST_CASE("ykl_certificate accepts the Helstrom measurement") {
    std::mt19937 rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        Ensemble e = testutil::random_ensemble(rng, 2, 3, true);
        auto h = helstrom_two_state(e);
        CHECK(ykl_certificate(e, h.povm) <= 1e-9);
    }
}

TEST_CASE("success_probability validates labels") {
    auto e = testutil::zero_plus_ensemble();
    Povm p;
    p.effects = {Mat::Identity(2, 2)};
    p.labels = {0};
    CHECK_THROWS_AS(success_probability(e, p), LabelMismatch);
    p.labels = {5};
    p.effects = {Mat::Identity(2, 2)};
    CHECK_THROWS_AS(success_probability(e, p), LabelMismatch);
}

TEST_CASE("minimum-error success is invariant under a global unitary") {
    std::mt19937 rng(107);
    Ensemble e = testutil::random_ensemble(rng, 3, 3, false);
    Mat a = Mat::Random(3, 3);
    Eigen::HouseholderQR<Mat> qr(a);
    Mat u = qr.householderQ();
    std::vector<PureState> rotated;
    for (const auto& s : e.states) rotated.emplace_back(Vec(u * s.amplitudes), true);
    Ensemble e2(rotated, e.priors);
    CHECK(std::abs(min_error_povm(e).success_probability -
                   min_error_povm(e2).success_probability) <= 1e-8);
}

TEST_CASE("unambiguous discrimination, symmetric interior regime") {
    auto e = testutil::zero_plus_ensemble();
    auto r = unambiguous_two_state(e);
    CHECK(r.success_probability == Catch::Approx(1.0 - std::sqrt(0.5)).margin(1e-10));
    CHECK(r.povm.psd_violation() <= 1e-10);
    CHECK(r.povm.completeness_defect() <= 1e-10);
    // Conclusive outcomes never fire for the wrong hypothesis.
    CHECK(r.conditionals(0, 1) <= 1e-10);
    CHECK(r.conditionals(1, 0) <= 1e-10);
}

TEST_CASE("unambiguous discrimination, boundary regime") {
    Vec zero(2), plus(2);
    zero << 1.0, 0.0;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    Ensemble e({PureState(zero), PureState(plus, true)}, {0.05, 0.95});
    // sqrt(p2/p1) c >= 1, so hypothesis 0 is never concluded.
    auto r = unambiguous_two_state(e);
    CHECK((e.states[0].amplitudes.adjoint() * r.povm.effects[0] *
           e.states[0].amplitudes)
              .real()(0, 0) <= 1e-12);
    CHECK(r.success_probability ==
          Catch::Approx(0.95 * 0.5).margin(1e-10));  // p2 (1 - c^2)
    CHECK(r.povm.psd_violation() <= 1e-10);
}

TEST_CASE("unambiguous discrimination never errs on random pairs") {
    std::mt19937 rng(109);
    for (int trial = 0; trial < 30; ++trial) {
        Ensemble e = testutil::random_ensemble(rng, 2, 3, true);
        auto r = unambiguous_two_state(e);
        CHECK(r.conditionals(0, 1) <= 1e-9);
        CHECK(r.conditionals(1, 0) <= 1e-9);
        CHECK(r.povm.psd_violation() <= 1e-9);
        CHECK(r.povm.completeness_defect() <= 1e-9);
        // Unambiguous success cannot beat minimum-error success.
        CHECK(r.success_probability <=
              helstrom_two_state(e).success_probability + 1e-9);
    }
}

TEST_CASE("unambiguous discrimination rejects identical states") {
    Vec zero(2);
    zero << 1.0, 0.0;
    Ensemble e({PureState(zero), PureState(zero)}, {0.5, 0.5});
    CHECK_THROWS_AS(unambiguous_two_state(e), IdenticalStates);
}

TEST_CASE("min_error_povm handles K=3 with skewed priors") {
    std::mt19937 rng(113);
    for (int trial = 0; trial < 10; ++trial) {
        Ensemble e = testutil::random_ensemble(rng, 3, 2, true);
        auto r = min_error_povm(e);
        CHECK(r.certificate_residual <= 1e-7);
        CHECK(r.povm.psd_violation() <= 1e-7);
        CHECK(r.povm.completeness_defect() <= 1e-7);
        // Never below the best-single-guess floor.
        double best_prior = *std::max_element(e.priors.begin(), e.priors.end());
        CHECK(r.success_probability >= best_prior - 1e-9);
    }
}
