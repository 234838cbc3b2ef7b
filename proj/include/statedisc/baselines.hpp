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
#include <random>
#include <vector>

#include "statedisc/discrimination.hpp"
#include "statedisc/rollup_ncopy.hpp"

namespace statedisc {

/// Optimal joint measurement on the dense N-copy space; the ground truth the
/// roll-up protocol is checked against.
inline DiscriminationResult joint_oracle(const Ensemble& e, Index n,
                                         const ToleranceConfig& tol = {}) {
    Index dense = 1;
    for (Index i = 0; i < n; ++i) {
        if (dense > (Index{1} << 14) / e.dim())
            throw TooLarge("joint_oracle: d^N exceeds 2^14");
        dense *= e.dim();
    }
    std::vector<PureState> copies;
    for (Index k = 0; k < e.size(); ++k) {
        Vec v = Vec::Ones(1);
        for (Index i = 0; i < n; ++i)
            v = kron(std::move(v), e.states[static_cast<size_t>(k)].amplitudes);
        copies.emplace_back(std::move(v), true);
    }
    return min_error_povm(Ensemble(std::move(copies), e.priors), tol);
}

struct LocalSearchConfig {
    int grid_resolution = 48;  // points per angle in the initial grid
    int refine_rounds = 6;
    int random_probes = 32;    // extra seeded starting points per round
    unsigned seed = 0;
};

struct LocalBaselineResult {
    double success = 0.0;
    double theta = 0.0;  // Bloch polar angle of the measured basis
    double phi = 0.0;    // Bloch azimuthal angle
};

namespace detail {

/// Bayes-optimal success for N independent repetitions of the projective
/// qubit measurement along (theta, phi), with outcome counts as the
/// sufficient statistic.
inline double local_success(const Ensemble& e, Index n, double theta, double phi) {
    const Index k = e.size();
    Vec m(2);
    m << std::cos(theta / 2.0), std::exp(cxd(0.0, phi)) * std::sin(theta / 2.0);
    std::vector<double> q(static_cast<size_t>(k));
    for (Index i = 0; i < k; ++i) {
        cxd amp = m.dot(e.states[static_cast<size_t>(i)].amplitudes);
        q[static_cast<size_t>(i)] = std::norm(amp);
    }
    // log C(N, c) built incrementally; exact at these sizes.
    double success = 0.0;
    double log_binom = 0.0;
    for (Index c = 0; c <= n; ++c) {
        if (c > 0)
            log_binom += std::log(static_cast<double>(n - c + 1)) -
                         std::log(static_cast<double>(c));
        double best = 0.0;
        for (Index i = 0; i < k; ++i) {
            const double qi = q[static_cast<size_t>(i)];
            double logp;
            if (qi <= 0.0)
                logp = (c == 0) ? 0.0 : -1e300;
            else if (qi >= 1.0)
                logp = (c == n) ? 0.0 : -1e300;
            else
                logp = c * std::log(qi) + (n - c) * std::log1p(-qi);
            const double p = e.priors[static_cast<size_t>(i)] *
                             std::exp(log_binom + logp);
            best = std::max(best, p);
        }
        success += best;
    }
    return std::min(1.0, success);
}

}  // namespace detail

/// Best non-adaptive local strategy over identical per-copy projective qubit
/// measurements with Bayes-optimal post-processing.  Deterministic grid plus
/// local refinement; a certified lower bound on the best strategy in this
/// class.
inline LocalBaselineResult local_nonadaptive_baseline(const Ensemble& e, Index n,
                                                      const LocalSearchConfig& cfg = {}) {
    if (e.dim() != 2)
        throw UnsupportedDimension("local_nonadaptive_baseline: qubit hypotheses only");
    if (n < 1 || n > 12)
        throw TooLarge("local_nonadaptive_baseline: N must be in [1, 12]");

    const double pi = std::acos(-1.0);
    LocalBaselineResult best;
    auto consider = [&](double theta, double phi) {
        const double s = detail::local_success(e, n, theta, phi);
        if (s > best.success) {
            best.success = s;
            best.theta = theta;
            best.phi = phi;
        }
    };

    const int g = cfg.grid_resolution;
    for (int it = 0; it <= g; ++it)
        for (int ip = 0; ip < 2 * g; ++ip)
            consider(pi * it / g, pi * ip / g);

    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double span_t = pi / g, span_p = pi / g;
    for (int round = 0; round < cfg.refine_rounds; ++round) {
        const double t0 = best.theta, p0 = best.phi;
        for (int it = -g / 2; it <= g / 2; ++it)
            for (int ip = -g / 2; ip <= g / 2; ++ip)
                consider(t0 + span_t * it * 2.0 / g, p0 + span_p * ip * 2.0 / g);
        for (int probe = 0; probe < cfg.random_probes; ++probe)
            consider(t0 + span_t * (unit(rng) - 0.5), p0 + span_p * (unit(rng) - 0.5));
        span_t /= g / 2.0;
        span_p /= g / 2.0;
    }
    return best;
}

/// End-to-end comparison: protocol success vs joint-measurement optimum vs
/// the local baseline, with the diagnostics that certify a passing run.
struct ComparisonReport {
    double p_protocol = 0.0;
    double p_joint_oracle = 0.0;
    double p_local_baseline = -1.0;  // negative when not requested/feasible
    double gram_error = 0.0;         // max |final Gram - initial Gram^N|
    double decoupling_max = 0.0;
    double certificate_protocol = 0.0;
    double certificate_joint = 0.0;
    double local_gap = 0.0;          // p_joint_oracle - p_local_baseline
};

inline ComparisonReport compare_protocol_vs_oracle(
    const Ensemble& e, Index n, bool with_local_baseline = true,
    const ToleranceConfig& tol = {}, const LocalSearchConfig& search = {}) {
    ComparisonReport report;

    auto [trace, final_ensemble] = run_ncopy_protocol(e, n, ProtocolMode::full, tol);
    DiscriminationResult protocol = min_error_povm(final_ensemble, tol);
    report.p_protocol = protocol.success_probability;
    report.certificate_protocol = protocol.certificate_residual;
    for (double r : trace.decoupling_residuals)
        report.decoupling_max = std::max(report.decoupling_max, r);

    Mat g0 = gram_matrix(e);
    Mat gn = trace.gram_history.back();
    for (Index i = 0; i < e.size(); ++i)
        for (Index j = 0; j < e.size(); ++j)
            report.gram_error = std::max(
                report.gram_error, std::abs(gn(i, j) - std::pow(g0(i, j), static_cast<double>(n))));

    DiscriminationResult joint = joint_oracle(e, n, tol);
    report.p_joint_oracle = joint.success_probability;
    report.certificate_joint = joint.certificate_residual;

    if (with_local_baseline && e.dim() == 2 && n <= 12) {
        report.p_local_baseline = local_nonadaptive_baseline(e, n, search).success;
        report.local_gap = report.p_joint_oracle - report.p_local_baseline;
    }
    return report;
}

}  // namespace statedisc
