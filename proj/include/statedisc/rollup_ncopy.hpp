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

#include <utility>
#include <vector>

#include "statedisc/linalg.hpp"
#include "statedisc/states.hpp"

namespace statedisc {

enum class ProtocolMode { compact, full };

/// One roll-up interaction between the apparatus and a sample site.
///
/// The joint space is ordered sample-major: index = s * apparatus_dim + a,
/// so the decoupled targets |0_S, j_A> are the first apparatus_dim basis
/// vectors.
struct StepUnitary {
    Index site_index = 0;
    Mat matrix;              // (apparatus_dim * d) square unitary
    Index rank = 0;          // dimension actually spanned by the hypotheses
    OrthonormalBasis basis;  // the orthonormalized joint hypothesis states
};

struct ProtocolTrace {
    ProtocolMode mode = ProtocolMode::compact;
    std::vector<StepUnitary> steps;
    // apparatus_states[n][k]: apparatus state of hypothesis k after step n.
    std::vector<std::vector<Vec>> apparatus_states;
    std::vector<Mat> gram_history;
    std::vector<double> decoupling_residuals;  // full mode only, one per site
    Index apparatus_dim = 0;
};

/// Builds the step unitary for one site: Gram-Schmidts the K joint states
/// |apparatus_k> (x) |sample_k| into a basis {phi_j}, maps phi_j -> |0_S j_A>
/// and completes deterministically.  Returns the unitary and the new
/// apparatus states (exactly normalized).
inline std::pair<StepUnitary, std::vector<Vec>> build_step_unitary(
    const std::vector<Vec>& apparatus_states, const std::vector<Vec>& sample_states,
    const ToleranceConfig& tol = {}) {
    if (apparatus_states.empty() || apparatus_states.size() != sample_states.size())
        throw DimensionMismatch("build_step_unitary: hypothesis count mismatch");
    const Index a_dim = apparatus_states[0].size();
    const Index d = sample_states[0].size();
    const Index k = static_cast<Index>(apparatus_states.size());

    std::vector<Vec> joint;
    for (Index i = 0; i < k; ++i) {
        if (apparatus_states[static_cast<size_t>(i)].size() != a_dim ||
            sample_states[static_cast<size_t>(i)].size() != d)
            throw DimensionMismatch("build_step_unitary: state dimension mismatch");
        if (sample_states[static_cast<size_t>(i)].norm() < tol.rank_tol ||
            apparatus_states[static_cast<size_t>(i)].norm() < tol.rank_tol)
            throw DegenerateInput("build_step_unitary: zero hypothesis state");
        joint.push_back(kron(sample_states[static_cast<size_t>(i)],
                             apparatus_states[static_cast<size_t>(i)]));
    }

    StepUnitary step;
    step.basis = gram_schmidt(joint, tol);
    step.rank = step.basis.rank;
    if (step.rank > a_dim)
        throw DimensionMismatch("build_step_unitary: span exceeds apparatus dimension");
    // W has phi_j as columns; U = W^dagger sends phi_j to e_j = |0_S, j_A>.
    step.matrix = complete_isometry(step.basis, a_dim * d, tol).adjoint();

    std::vector<Vec> new_apparatus;
    for (Index i = 0; i < k; ++i) {
        Vec v = Vec::Zero(a_dim);
        v.head(step.rank) = step.basis.coefficients.row(i).transpose();
        v /= v.norm();
        new_apparatus.push_back(std::move(v));
    }
    return {std::move(step), std::move(new_apparatus)};
}

namespace detail {

inline std::vector<std::vector<PureState>> replicate_sites(const Ensemble& e, Index n) {
    std::vector<std::vector<PureState>> per_site;
    for (Index k = 0; k < e.size(); ++k)
        per_site.push_back(std::vector<PureState>(static_cast<size_t>(n),
                                                  e.states[static_cast<size_t>(k)]));
    return per_site;
}

}  // namespace detail

/// Runs the full N-site roll-up for (possibly non-symmetric) product-state
/// hypotheses.  `site_states[k][n]` is hypothesis k's state on site n.  The
/// apparatus is a fixed K-dimensional register initialized in |0>; every
/// step leaves its sample in |0> and the K apparatus states carry the whole
/// Gram matrix of the sites processed so far.
inline std::pair<ProtocolTrace, Ensemble> run_ncopy_protocol(
    const std::vector<std::vector<PureState>>& site_states,
    const std::vector<double>& priors, ProtocolMode mode = ProtocolMode::compact,
    const ToleranceConfig& tol = {}) {
    tol.validate();
    if (site_states.empty()) throw EmptyInput("run_ncopy_protocol: no hypotheses");
    const Index k = static_cast<Index>(site_states.size());
    const Index n = static_cast<Index>(site_states[0].size());
    if (n < 1) throw EmptyInput("run_ncopy_protocol: no sites");
    for (const auto& row : site_states)
        if (static_cast<Index>(row.size()) != n)
            throw SiteCountMismatch("run_ncopy_protocol: hypotheses disagree on site count");

    ProtocolTrace trace;
    trace.mode = mode;
    trace.apparatus_dim = k;

    // Full mode carries the K global statevectors on apparatus + all sites.
    std::vector<Index> dims;          // [sites..., apparatus]; apparatus last
    std::vector<Vec> global;          // one per hypothesis
    if (mode == ProtocolMode::full) {
        Index dense = 1;
        for (Index s = 0; s < n; ++s) {
            const Index d = site_states[0][static_cast<size_t>(s)].dim();
            if (dense > (Index{1} << 14) / d)
                throw TooLargeForFullMode("run_ncopy_protocol: d^N exceeds 2^14");
            dense *= d;
            dims.push_back(d);
        }
        dims.push_back(k);
        for (Index i = 0; i < k; ++i) {
            Vec v = Vec::Ones(1);
            for (Index s = 0; s < n; ++s)
                v = kron(std::move(v), site_states[static_cast<size_t>(i)][static_cast<size_t>(s)].amplitudes);
            Vec app = Vec::Zero(k);
            app(0) = 1.0;
            global.push_back(kron(v, app));
        }
    }

    std::vector<Vec> apparatus;
    {
        Vec init = Vec::Zero(k);
        init(0) = 1.0;
        apparatus.assign(static_cast<size_t>(k), init);
    }

    for (Index s = 0; s < n; ++s) {
        std::vector<Vec> samples;
        for (Index i = 0; i < k; ++i)
            samples.push_back(site_states[static_cast<size_t>(i)][static_cast<size_t>(s)].amplitudes);
        auto [step, next] = build_step_unitary(apparatus, samples, tol);
        step.site_index = s;
        apparatus = std::move(next);

        if (mode == ProtocolMode::full) {
            double worst = 0.0;
            for (Index i = 0; i < k; ++i) {
                apply_pair_unitary(global[static_cast<size_t>(i)], dims,
                                   static_cast<int>(s), static_cast<int>(n), step.matrix);
                Mat rho = global[static_cast<size_t>(i)] *
                          global[static_cast<size_t>(i)].adjoint();
                Mat site = partial_trace(rho, dims, {static_cast<int>(s)});
                worst = std::max(worst, 1.0 - site(0, 0).real());
            }
            trace.decoupling_residuals.push_back(worst);
        }

        trace.gram_history.push_back(gram_matrix(apparatus));
        trace.apparatus_states.push_back(apparatus);
        trace.steps.push_back(std::move(step));
    }

    std::vector<PureState> finals;
    for (const auto& v : apparatus) finals.emplace_back(v, true);
    return {std::move(trace), Ensemble(std::move(finals), priors)};
}

/// N identical copies of each hypothesis.
inline std::pair<ProtocolTrace, Ensemble> run_ncopy_protocol(
    const Ensemble& e, Index n, ProtocolMode mode = ProtocolMode::compact,
    const ToleranceConfig& tol = {}) {
    return run_ncopy_protocol(detail::replicate_sites(e, n), e.priors, mode, tol);
}

struct DecouplingReport {
    std::vector<double> residuals;
    double max_residual = 0.0;
    bool pass = false;
};

/// Checks that every swept sample really was left in |0>.
inline DecouplingReport verify_decoupling(const ProtocolTrace& trace,
                                          double threshold = 1e-10) {
    if (trace.mode != ProtocolMode::full)
        throw CompactModeHasNoGlobalState(
            "verify_decoupling: compact-mode trace has no per-site residuals");
    DecouplingReport report;
    report.residuals = trace.decoupling_residuals;
    for (double r : report.residuals)
        report.max_residual = std::max(report.max_residual, r);
    report.pass = report.max_residual <= threshold;
    return report;
}

}  // namespace statedisc
