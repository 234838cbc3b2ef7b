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

#include "statedisc/mps.hpp"
#include "statedisc/rollup_ncopy.hpp"

namespace statedisc {

/// Trace of one MPS roll-up run.  The final state lives on apparatus (x)
/// reference, flattened apparatus-major: index = a * K + k.
struct MpsProtocolTrace {
    ProtocolMode mode = ProtocolMode::compact;
    std::vector<StepUnitary> steps;
    std::vector<RVec> schmidt_spectra;        // per swept site
    std::vector<Index> apparatus_dim_history; // Schmidt rank per step
    std::vector<double> discarded_weights;    // truncated weight per step
    std::vector<double> decoupling_residuals; // full mode only
    Index apparatus_cap = 0;                  // fixed register dimension D*K
    std::vector<Index> site_phys_dims;
    Mat final_matrix;                         // apparatus x reference amplitudes
    Vec final_state;                          // flattened final_matrix
    Mat gram_initial;                         // transfer-contraction Gram
    Mat gram_final;                           // Gram of extracted apparatus states
    std::vector<double> priors;
};

/// Brings an MPS to right-canonical form (every tensor right-orthonormal
/// except the first, which carries the norm), shrinking ranks along the way.
inline Mps right_canonicalize(const Mps& mps, const ToleranceConfig& tol = {}) {
    std::vector<SiteTensor> sites = mps.sites;
    for (size_t n = sites.size() - 1; n >= 1; --n) {
        const SiteTensor& b = sites[n];
        const Index l = b.left(), p = b.phys(), r = b.right();
        Mat m(l, p * r);
        for (Index pp = 0; pp < p; ++pp) m.block(0, pp * r, l, r) = b.m[static_cast<size_t>(pp)];
        Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RVec& s = svd.singularValues();
        const double smax = s.size() > 0 ? s(0) : 0.0;
        Index rank = 0;
        while (rank < s.size() && s(rank) > tol.svd_truncation_tol * smax && s(rank) > 0.0)
            ++rank;
        rank = std::max<Index>(rank, 1);
        Mat vt = svd.matrixV().leftCols(rank).adjoint();  // rank x (p*r)
        std::vector<Mat> mats;
        for (Index pp = 0; pp < p; ++pp) mats.push_back(vt.block(0, pp * r, rank, r));
        sites[n] = SiteTensor(std::move(mats));
        Mat carry = svd.matrixU().leftCols(rank) * s.head(rank).asDiagonal();
        for (auto& a : sites[n - 1].m) a = a * carry;
    }
    return Mps(std::move(sites));
}

/// Sweeps the purified chain left to right.  At each site the Schmidt
/// decomposition between (apparatus, site) and the remainder is computed
/// from the local two-tensor block; the step unitary sends the left Schmidt
/// vectors to |0_S, j_A>.  Ends with everything on apparatus (x) reference.
inline std::pair<MpsProtocolTrace, Vec> run_mps_protocol(
    const MpsEnsemble& ensemble, ProtocolMode mode = ProtocolMode::compact,
    const ToleranceConfig& tol = {}) {
    tol.validate();
    const Index k = ensemble.size();
    const Index n = ensemble.n_sites();
    const Index cap = ensemble.max_bond_dim() * k;

    MpsProtocolTrace trace;
    trace.mode = mode;
    trace.apparatus_cap = cap;
    trace.priors = ensemble.priors;
    trace.gram_initial = gram_matrix(ensemble);

    PurifiedMps purified = purify_ensemble(ensemble);
    Mps chain = right_canonicalize(purified.chain, tol);
    for (Index s = 0; s < n; ++s)
        trace.site_phys_dims.push_back(chain.sites[static_cast<size_t>(s)].phys());

    Mat c = Mat::Ones(1, 1);  // apparatus-bond matrix; starts as |0> with bond 1
    for (Index s = 0; s < n; ++s) {
        const SiteTensor& b = chain.sites[static_cast<size_t>(s)];
        const Index a_eff = c.rows();
        const Index d = b.phys();
        const Index chi = b.right();
        // T[(p * a_eff + j), r]: joint (apparatus, site) against the rest.
        Vec t(a_eff * d * chi);
        for (Index p = 0; p < d; ++p) {
            Mat blk = c * b.m[static_cast<size_t>(p)];  // a_eff x chi
            for (Index j = 0; j < a_eff; ++j)
                t.segment(((p * a_eff) + j) * chi, chi) = blk.row(j).transpose();
        }
        SchmidtDecomposition sd = schmidt_decompose(t, a_eff * d, chi, tol);
        if (sd.rank > cap)
            throw SchmidtRankOverflow("run_mps_protocol: Schmidt rank exceeds D*K");
        trace.schmidt_spectra.push_back(sd.values);
        trace.apparatus_dim_history.push_back(sd.rank);
        trace.discarded_weights.push_back(sd.discarded_weight);

        // Step unitary on the fixed-size register: embed the effective
        // apparatus into the low indices of the cap-dimensional one.
        {
            std::vector<Vec> mu_padded;
            for (Index j = 0; j < sd.rank; ++j) {
                Vec mu = Vec::Zero(d * cap);
                for (Index p = 0; p < d; ++p)
                    for (Index a = 0; a < a_eff; ++a)
                        mu(p * cap + a) = sd.left[static_cast<size_t>(j)](p * a_eff + a);
                mu_padded.push_back(std::move(mu));
            }
            StepUnitary step;
            step.site_index = s;
            step.rank = sd.rank;
            step.matrix = complete_isometry(mu_padded, d * cap, tol).adjoint();
            trace.steps.push_back(std::move(step));
        }

        Mat next(sd.rank, chi);
        for (Index j = 0; j < sd.rank; ++j)
            next.row(j) = sd.values(j) * sd.right[static_cast<size_t>(j)].transpose();
        c = std::move(next);
    }

    // Contract the remaining reference site: F(a, k) amplitudes on A (x) R.
    const SiteTensor& ref = chain.sites[static_cast<size_t>(n)];
    Mat f(c.rows(), k);
    for (Index hk = 0; hk < k; ++hk)
        f.col(hk) = c * ref.m[static_cast<size_t>(hk)].col(0);
    trace.final_matrix = f;
    trace.final_state.resize(f.rows() * k);
    for (Index a = 0; a < f.rows(); ++a)
        for (Index hk = 0; hk < k; ++hk) trace.final_state(a * k + hk) = f(a, hk);

    trace.gram_final.resize(k, k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            trace.gram_final(i, j) = (f.col(i) / f.col(i).norm()).dot(f.col(j) / f.col(j).norm());

    if (mode == ProtocolMode::full) {
        Index dense = k;  // reference dimension
        for (Index s = 0; s < n; ++s) {
            dense *= trace.site_phys_dims[static_cast<size_t>(s)];
            if (dense * cap > (Index{1} << 14))
                throw TooLargeForFullMode("run_mps_protocol: dense dimension exceeds 2^14");
        }
        std::vector<Index> dims = trace.site_phys_dims;
        dims.push_back(k);    // reference axis
        dims.push_back(cap);  // apparatus axis, fastest
        Vec app0 = Vec::Zero(cap);
        app0(0) = 1.0;
        Vec global = kron(mps_to_statevector(purified.chain), app0);
        for (Index s = 0; s < n; ++s) {
            apply_pair_unitary(global, dims, static_cast<int>(s),
                               static_cast<int>(n + 1),
                               trace.steps[static_cast<size_t>(s)].matrix);
            Mat rho = global * global.adjoint();
            Mat site = partial_trace(rho, dims, {static_cast<int>(s)});
            trace.decoupling_residuals.push_back(1.0 - site(0, 0).real());
        }
    }

    Vec final_state = trace.final_state;
    return {std::move(trace), std::move(final_state)};
}

/// Splits the final A (x) R state back into the K apparatus states and their
/// priors.  Component norms must match sqrt(p_k).
inline Ensemble extract_apparatus_ensemble(const Mat& final_matrix,
                                           const std::vector<double>& priors) {
    const Index k = final_matrix.cols();
    if (static_cast<Index>(priors.size()) != k)
        throw DimensionMismatch("extract_apparatus_ensemble: prior count mismatch");
    std::vector<PureState> states;
    std::vector<double> recovered;
    for (Index i = 0; i < k; ++i) {
        const double nrm = final_matrix.col(i).norm();
        if (std::abs(nrm - std::sqrt(priors[static_cast<size_t>(i)])) > 1e-8)
            throw NormMismatch(
                "extract_apparatus_ensemble: component norm deviates from sqrt(p_k)");
        states.emplace_back(Vec(final_matrix.col(i) / nrm), true);
        recovered.push_back(nrm * nrm);
    }
    double sum = 0.0;
    for (double q : recovered) sum += q;
    for (double& q : recovered) q /= sum;
    return Ensemble(std::move(states), std::move(recovered));
}

inline Ensemble extract_apparatus_ensemble(const MpsProtocolTrace& trace) {
    return extract_apparatus_ensemble(trace.final_matrix, trace.priors);
}

/// Applies the recorded step unitaries in reverse to |0...0> (x) |psi_k^final>,
/// recovering the original hypothesis state on the lattice.  Requires a
/// full-mode trace (the preparation runs on the dense site space).
inline Vec reverse_prepare(const MpsProtocolTrace& trace, Index hypothesis) {
    if (trace.mode != ProtocolMode::full)
        throw CompactModeHasNoGlobalState(
            "reverse_prepare: requires a full-mode trace");
    if (hypothesis < 0 || hypothesis >= trace.final_matrix.cols())
        throw DimensionMismatch("reverse_prepare: hypothesis index out of range");

    const Index cap = trace.apparatus_cap;
    const Index n = static_cast<Index>(trace.site_phys_dims.size());
    Index dense = 1;
    for (Index d : trace.site_phys_dims) dense *= d;

    Vec app = Vec::Zero(cap);
    Vec col = trace.final_matrix.col(hypothesis);
    app.head(col.size()) = col / col.norm();

    Vec sites0 = Vec::Zero(dense);
    sites0(0) = 1.0;
    Vec global = kron(sites0, app);
    std::vector<Index> dims = trace.site_phys_dims;
    dims.push_back(cap);
    for (Index s = n - 1; s >= 0; --s)
        apply_pair_unitary(global, dims, static_cast<int>(s), static_cast<int>(n),
                           Mat(trace.steps[static_cast<size_t>(s)].matrix.adjoint()));

    // The apparatus returns to |0>; read off its zero slice.
    Vec out(dense);
    for (Index i = 0; i < dense; ++i) out(i) = global(i * cap);
    return out;
}

}  // namespace statedisc
