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
#include "statedisc/states.hpp"

namespace statedisc {

/// Outcome label for the inconclusive result of unambiguous discrimination.
inline constexpr int kInconclusive = -1;

/// A positive operator-valued measure: PSD effects summing to identity.
struct Povm {
    std::vector<Mat> effects;
    std::vector<int> labels;  // hypothesis index, or kInconclusive

    Index dim() const { return effects.empty() ? 0 : effects[0].rows(); }

    /// Largest PSD violation (most negative eigenvalue, as a magnitude) and
    /// completeness defect, for validity checks.
    double psd_violation() const {
        double worst = 0.0;
        for (const auto& e : effects) {
            HermitianEig eig = hermitian_eig(e, 1e-8);
            worst = std::max(worst, std::max(0.0, -eig.values.minCoeff()));
        }
        return worst;
    }

    double completeness_defect() const {
        Mat sum = Mat::Zero(dim(), dim());
        for (const auto& e : effects) sum += e;
        return (sum - Mat::Identity(dim(), dim())).cwiseAbs().maxCoeff();
    }
};

struct DiscriminationResult {
    Povm povm;
    double success_probability = 0.0;
    Eigen::MatrixXd conditionals;      // K x outcomes, p(outcome | k)
    double certificate_residual = 0.0;
    int iterations_used = 0;
    bool converged = true;
};

namespace detail {

inline std::vector<Mat> weighted_densities(const Ensemble& e) {
    std::vector<Mat> rho;
    for (Index k = 0; k < e.size(); ++k)
        rho.push_back(e.priors[static_cast<size_t>(k)] *
                      e.states[static_cast<size_t>(k)].density());
    return rho;
}

/// Pseudo-inverse square root on the support of a PSD matrix, plus the
/// projector onto its kernel.
inline std::pair<Mat, Mat> pinv_sqrt(const Mat& m, double rel_tol = 1e-12) {
    HermitianEig eig = hermitian_eig(m, 1e-8);
    const double lmax = std::max(eig.values.maxCoeff(), 0.0);
    const Index d = m.rows();
    Mat inv_sqrt = Mat::Zero(d, d);
    Mat kernel = Mat::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
        const Vec v = eig.vectors.col(i);
        if (eig.values(i) > rel_tol * lmax && eig.values(i) > 0.0)
            inv_sqrt += (1.0 / std::sqrt(eig.values(i))) * (v * v.adjoint());
        else
            kernel += v * v.adjoint();
    }
    return {inv_sqrt, kernel};
}

inline Eigen::MatrixXd conditionals_for(const Ensemble& e, const Povm& povm) {
    Eigen::MatrixXd c(e.size(), static_cast<Index>(povm.effects.size()));
    for (Index k = 0; k < e.size(); ++k)
        for (size_t o = 0; o < povm.effects.size(); ++o) {
            const Vec& psi = e.states[static_cast<size_t>(k)].amplitudes;
            c(k, static_cast<Index>(o)) =
                std::max(0.0, (psi.adjoint() * povm.effects[o] * psi).real()(0, 0));
        }
    return c;
}

}  // namespace detail

/// p_success = sum_k p_k Tr(rho_k Pi_k) over hypothesis-labeled effects.
inline double success_probability(const Ensemble& e, const Povm& povm) {
    if (povm.effects.size() != povm.labels.size())
        throw LabelMismatch("success_probability: labels/effects length mismatch");
    std::vector<bool> seen(static_cast<size_t>(e.size()), false);
    double p = 0.0;
    for (size_t o = 0; o < povm.effects.size(); ++o) {
        const int lbl = povm.labels[o];
        if (lbl == kInconclusive) continue;
        if (lbl < 0 || lbl >= e.size())
            throw LabelMismatch("success_probability: label outside hypothesis range");
        seen[static_cast<size_t>(lbl)] = true;
        const Vec& psi = e.states[static_cast<size_t>(lbl)].amplitudes;
        p += e.priors[static_cast<size_t>(lbl)] *
             (psi.adjoint() * povm.effects[o] * psi).real()(0, 0);
    }
    for (bool s : seen)
        if (!s) throw LabelMismatch("success_probability: labels do not cover hypotheses");
    return std::min(1.0, std::max(0.0, p));
}

/// Dual optimality residual for a minimum-error POVM: with
/// Y = sum_k p_k rho_k Pi_k (symmetrized), returns the worst negative
/// eigenvalue over k of (Y - p_k rho_k), clamped at zero, plus the
/// Hermiticity defect of Y.  Zero iff the POVM is optimal.
inline double ykl_certificate(const Ensemble& e, const Povm& povm) {
    if (static_cast<Index>(povm.effects.size()) < e.size())
        throw LabelMismatch("ykl_certificate: outcome count below hypothesis count");
    std::vector<Mat> rho = detail::weighted_densities(e);
    const Index d = e.dim();
    Mat y = Mat::Zero(d, d);
    std::vector<bool> seen(static_cast<size_t>(e.size()), false);
    for (size_t o = 0; o < povm.effects.size(); ++o) {
        const int lbl = povm.labels[o];
        if (lbl == kInconclusive) continue;
        if (lbl < 0 || lbl >= e.size())
            throw LabelMismatch("ykl_certificate: label outside hypothesis range");
        seen[static_cast<size_t>(lbl)] = true;
        y += rho[static_cast<size_t>(lbl)] * povm.effects[o];
    }
    for (bool s : seen)
        if (!s) throw LabelMismatch("ykl_certificate: labels do not cover hypotheses");
    const double herm_defect = (y - y.adjoint()).cwiseAbs().maxCoeff();
    Mat ys = (y + y.adjoint()) / 2.0;
    double residual = 0.0;
    for (Index k = 0; k < e.size(); ++k) {
        HermitianEig eig = hermitian_eig(ys - rho[static_cast<size_t>(k)], 1e-8);
        residual = std::max(residual, std::max(0.0, -eig.values.minCoeff()));
    }
    return residual + herm_defect;
}

/// Two-hypothesis minimum-error measurement: success is
/// (1 + ||p1 rho1 - p2 rho2||_1)/2, with the POVM projecting onto the
/// positive/negative eigenspaces of the weighted difference.  The zero
/// eigenspace goes to outcome 0.
inline DiscriminationResult helstrom_two_state(double p1, const Mat& rho1,
                                               double p2, const Mat& rho2) {
    if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols())
        throw DimensionMismatch("helstrom_two_state: dimension mismatch");
    const Index d = rho1.rows();
    Mat gamma = p1 * rho1 - p2 * rho2;
    HermitianEig eig = hermitian_eig(gamma, 1e-8);
    Mat pi1 = Mat::Zero(d, d);
    for (Index i = 0; i < d; ++i)
        if (eig.values(i) >= 0.0)
            pi1 += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    DiscriminationResult out;
    out.povm.effects = {pi1, Mat::Identity(d, d) - pi1};
    out.povm.labels = {0, 1};
    out.success_probability = 0.5 * (1.0 + eig.values.cwiseAbs().sum());
    out.conditionals.resize(2, 2);
    out.conditionals(0, 0) = (rho1 * pi1).trace().real();
    out.conditionals(0, 1) = 1.0 - out.conditionals(0, 0);
    out.conditionals(1, 0) = (rho2 * pi1).trace().real();
    out.conditionals(1, 1) = 1.0 - out.conditionals(1, 0);
    return out;
}

inline DiscriminationResult helstrom_two_state(const Ensemble& e) {
    if (e.size() != 2)
        throw DimensionMismatch("helstrom_two_state: ensemble must have two hypotheses");
    DiscriminationResult out =
        helstrom_two_state(e.priors[0], e.states[0].density(), e.priors[1],
                           e.states[1].density());
    out.certificate_residual = ykl_certificate(e, out.povm);
    return out;
}

/// K-hypothesis minimum-error measurement by fixed-point iteration on the
/// optimality conditions, initialized from the square-root measurement.
/// Iterates until the dual residual falls below certificate_tol and the
/// success plateaus, or max_iterations is hit (the best iterate is still
/// returned, flagged non-converged).
inline DiscriminationResult min_error_povm(const Ensemble& e,
                                           const ToleranceConfig& tol = {}) {
    tol.validate();
    const Index k = e.size();
    const Index d = e.dim();
    std::vector<Mat> rho = detail::weighted_densities(e);
    Mat mix = Mat::Zero(d, d);
    for (const auto& r : rho) mix += r;

    // Square-root ("pretty good") measurement on the support of the mixture;
    // the kernel projector is assigned to outcome 0.
    auto [s, kernel] = detail::pinv_sqrt(mix);
    std::vector<Mat> pi;
    for (Index i = 0; i < k; ++i) pi.push_back(s * rho[static_cast<size_t>(i)] * s);
    pi[0] += kernel;

    auto success_of = [&](const std::vector<Mat>& eff) {
        double p = 0.0;
        for (Index i = 0; i < k; ++i)
            p += (rho[static_cast<size_t>(i)] * eff[static_cast<size_t>(i)]).trace().real();
        return p;
    };
    auto residual_of = [&](const std::vector<Mat>& eff) {
        Mat y = Mat::Zero(d, d);
        for (Index i = 0; i < k; ++i) y += rho[static_cast<size_t>(i)] * eff[static_cast<size_t>(i)];
        const double herm = (y - y.adjoint()).cwiseAbs().maxCoeff();
        Mat ys = (y + y.adjoint()) / 2.0;
        double r = 0.0;
        for (Index i = 0; i < k; ++i) {
            HermitianEig eig = hermitian_eig(ys - rho[static_cast<size_t>(i)], 1e-8);
            r = std::max(r, std::max(0.0, -eig.values.minCoeff()));
        }
        return r + herm;
    };

    double success = success_of(pi);
    double residual = residual_of(pi);
    int iters = 0;
    while (residual > tol.certificate_tol && iters < tol.max_iterations) {
        Mat g = Mat::Zero(d, d);
        for (Index i = 0; i < k; ++i)
            g += rho[static_cast<size_t>(i)] * pi[static_cast<size_t>(i)] * rho[static_cast<size_t>(i)];
        g = (g + g.adjoint()) / 2.0;
        auto [ginv, gker] = detail::pinv_sqrt(g);
        std::vector<Mat> next;
        for (Index i = 0; i < k; ++i) {
            Mat p = ginv * rho[static_cast<size_t>(i)] * pi[static_cast<size_t>(i)] *
                    rho[static_cast<size_t>(i)] * ginv;
            next.push_back((p + p.adjoint()) / 2.0);
        }
        next[0] += gker;
        double next_success = success_of(next);
        pi = std::move(next);
        ++iters;
        double gain = next_success - success;
        success = next_success;
        residual = residual_of(pi);
        if (gain < 1e-15 && gain > -1e-12) break;  // fixed point reached
    }

    DiscriminationResult out;
    out.povm.effects = pi;
    for (Index i = 0; i < k; ++i) out.povm.labels.push_back(static_cast<int>(i));
    out.conditionals = detail::conditionals_for(e, out.povm);
    out.success_probability = 0.0;
    for (Index i = 0; i < k; ++i)
        out.success_probability += e.priors[static_cast<size_t>(i)] * out.conditionals(i, i);
    out.certificate_residual = residual;
    out.iterations_used = iters;
    out.converged = residual <= tol.certificate_tol;
    return out;
}

/// Two-state unambiguous discrimination: zero error on conclusive outcomes,
/// overlap absorbed by the inconclusive outcome.  Interior-regime success is
/// 1 - 2 sqrt(p1 p2) c; outside that regime the optimal strategy degenerates
/// to a projective measurement ruling out the less likely state.
inline DiscriminationResult unambiguous_two_state(const Ensemble& e) {
    if (e.size() != 2)
        throw DimensionMismatch("unambiguous_two_state: ensemble must have two hypotheses");
    const Vec& psi1 = e.states[0].amplitudes;
    const Vec& psi2 = e.states[1].amplitudes;
    const double p1 = e.priors[0], p2 = e.priors[1];
    const cxd overlap = psi1.dot(psi2);
    const double c = std::abs(overlap);
    if (c >= 1.0 - 1e-12)
        throw IdenticalStates("unambiguous_two_state: states are identical");

    const Index d = psi1.size();
    // |psi_k_perp>: unit vector in span{psi1, psi2} orthogonal to psi_k.
    Vec perp2 = psi1 - std::conj(overlap) * psi2;  // orthogonal to psi2
    perp2.normalize();
    Vec perp1 = psi2 - overlap * psi1;             // orthogonal to psi1
    perp1.normalize();

    const double r12 = std::sqrt(p2 / p1) * c;
    const double r21 = std::sqrt(p1 / p2) * c;
    Mat e1 = Mat::Zero(d, d), e2 = Mat::Zero(d, d);
    if (r12 < 1.0 && r21 < 1.0) {
        e1 = ((1.0 - r12) / (1.0 - c * c)) * (perp2 * perp2.adjoint());
        e2 = ((1.0 - r21) / (1.0 - c * c)) * (perp1 * perp1.adjoint());
    } else if (r12 >= 1.0) {
        // p1 too small to ever conclude hypothesis 0: project onto psi1-perp.
        e2 = perp1 * perp1.adjoint();
    } else {
        e1 = perp2 * perp2.adjoint();
    }
    Mat e0 = Mat::Identity(d, d) - e1 - e2;

    DiscriminationResult out;
    out.povm.effects = {e1, e2, e0};
    out.povm.labels = {0, 1, kInconclusive};
    out.conditionals = detail::conditionals_for(e, out.povm);
    out.success_probability = p1 * out.conditionals(0, 0) + p2 * out.conditionals(1, 1);
    return out;
}

}  // namespace statedisc
