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

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

#include "statedisc/errors.hpp"
#include "statedisc/tolerances.hpp"

namespace statedisc {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Rotates `v` so that its first component with magnitude above `tol` is real
/// and positive.  Returns the phase that was divided out.
inline cxd fix_phase(Vec& v, double tol = 1e-10) {
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > tol) {
            cxd phase = v(i) / std::abs(v(i));
            v /= phase;
            return phase;
        }
    }
    return cxd(1.0, 0.0);
}

/// Rotates `v` so its largest-magnitude component (first index attaining the
/// maximum) is real and positive.  Returns the phase that was divided out.
inline cxd fix_phase_largest(Vec& v) {
    Index best = 0;
    double best_mag = 0.0;
    for (Index i = 0; i < v.size(); ++i) {
        double m = std::abs(v(i));
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    if (best_mag == 0.0) return cxd(1.0, 0.0);
    cxd phase = v(best) / best_mag;
    v /= phase;
    return phase;
}

inline Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Result of rank-revealing Gram-Schmidt orthonormalization.
///
/// `coefficients` is K x rank: row i expands input i in the retained basis.
struct OrthonormalBasis {
    std::vector<Vec> vectors;
    Index rank = 0;
    Mat coefficients;
};

/// Orthonormalizes `inputs` in order, dropping vectors whose residual after
/// projection falls below rank_tol times the largest input norm.  Each basis
/// vector's phase is fixed so its first significant component is real
/// positive.
inline OrthonormalBasis gram_schmidt(const std::vector<Vec>& inputs,
                                     const ToleranceConfig& tol = {}) {
    if (inputs.empty()) throw EmptyInput("gram_schmidt: no input vectors");
    const Index dim = inputs[0].size();
    double max_norm = 0.0;
    for (const auto& v : inputs) {
        if (v.size() != dim)
            throw DimensionMismatch("gram_schmidt: inputs have mixed dimensions");
        max_norm = std::max(max_norm, v.norm());
    }
    if (max_norm <= tol.rank_tol)
        throw AllDegenerate("gram_schmidt: every input is numerically zero");

    const double cutoff = tol.rank_tol * max_norm;
    OrthonormalBasis out;
    for (const auto& v : inputs) {
        Vec r = v;
        // Two projection passes keep orthogonality at working precision.
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : out.vectors) r -= b * b.dot(r);
        if (r.norm() < cutoff) continue;
        r.normalize();
        fix_phase(r, tol.rank_tol);
        out.vectors.push_back(std::move(r));
    }
    out.rank = static_cast<Index>(out.vectors.size());
    out.coefficients.resize(static_cast<Index>(inputs.size()), out.rank);
    for (Index i = 0; i < static_cast<Index>(inputs.size()); ++i)
        for (Index j = 0; j < out.rank; ++j)
            out.coefficients(i, j) = out.vectors[static_cast<size_t>(j)].dot(inputs[static_cast<size_t>(i)]);
    return out;
}

/// Completes a set of orthonormal columns to a full unitary on
/// `ambient_dim` dimensions.  The completion Gram-Schmidts the canonical
/// basis vectors in index order, so the same input always yields the same
/// matrix.
inline Mat complete_isometry(const std::vector<Vec>& columns, Index ambient_dim,
                             const ToleranceConfig& tol = {}) {
    const Index r = static_cast<Index>(columns.size());
    if (ambient_dim < r)
        throw DimensionMismatch("complete_isometry: ambient_dim < rank");
    for (Index i = 0; i < r; ++i) {
        if (columns[static_cast<size_t>(i)].size() != ambient_dim)
            throw DimensionMismatch("complete_isometry: column dimension mismatch");
        for (Index j = 0; j <= i; ++j) {
            cxd g = columns[static_cast<size_t>(i)].dot(columns[static_cast<size_t>(j)]);
            double target = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - target) > tol.rank_tol)
                throw NotOrthonormal("complete_isometry: input columns not orthonormal");
        }
    }
    Mat u(ambient_dim, ambient_dim);
    Index filled = 0;
    for (; filled < r; ++filled) u.col(filled) = columns[static_cast<size_t>(filled)];
    for (Index e = 0; e < ambient_dim && filled < ambient_dim; ++e) {
        Vec v = Vec::Zero(ambient_dim);
        v(e) = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (Index j = 0; j < filled; ++j) v -= u.col(j) * u.col(j).dot(v);
        if (v.norm() < tol.rank_tol) continue;
        v.normalize();
        fix_phase(v, tol.rank_tol);
        u.col(filled++) = v;
    }
    if (filled != ambient_dim)
        throw Error("complete_isometry: failed to complete basis");
    return u;
}

inline Mat complete_isometry(const OrthonormalBasis& basis, Index ambient_dim,
                             const ToleranceConfig& tol = {}) {
    return complete_isometry(basis.vectors, ambient_dim, tol);
}

/// Bipartite Schmidt decomposition of a vector on a dl x dr product space.
///
/// state = sum_j values[j] * left[j] (x) right[j], values sorted descending,
/// truncated below svd_truncation_tol relative to the largest.
struct SchmidtDecomposition {
    RVec values;
    std::vector<Vec> left;
    std::vector<Vec> right;
    Index rank = 0;
    double discarded_weight = 0.0;  // sum of squared truncated values
};

namespace detail {
// Lexicographic order on complex vectors (real part, then imaginary part).
inline bool lex_less(const Vec& a, const Vec& b) {
    for (Index i = 0; i < a.size(); ++i) {
        if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
        if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
    }
    return false;
}
}  // namespace detail

inline SchmidtDecomposition schmidt_decompose(const Vec& state, Index dim_left,
                                              Index dim_right,
                                              const ToleranceConfig& tol = {}) {
    if (state.size() != dim_left * dim_right)
        throw DimensionMismatch("schmidt_decompose: length != dim_left * dim_right");
    if (state.norm() == 0.0) throw ZeroState("schmidt_decompose: zero state");

    Mat m(dim_left, dim_right);
    for (Index l = 0; l < dim_left; ++l)
        for (Index rr = 0; rr < dim_right; ++rr) m(l, rr) = state(l * dim_right + rr);

    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVec& s = svd.singularValues();
    const double smax = s.size() > 0 ? s(0) : 0.0;

    SchmidtDecomposition out;
    std::vector<Index> keep;
    for (Index j = 0; j < s.size(); ++j) {
        if (s(j) >= tol.svd_truncation_tol * smax && s(j) > 0.0)
            keep.push_back(j);
        else
            out.discarded_weight += s(j) * s(j);
    }
    // Degenerate singular values: order by lexicographic left vector.
    std::stable_sort(keep.begin(), keep.end(), [&](Index a, Index b) {
        if (s(a) != s(b)) return s(a) > s(b);
        return detail::lex_less(svd.matrixU().col(a), svd.matrixU().col(b));
    });

    out.rank = static_cast<Index>(keep.size());
    out.values.resize(out.rank);
    for (Index j = 0; j < out.rank; ++j) {
        out.values(j) = s(keep[static_cast<size_t>(j)]);
        Vec u = svd.matrixU().col(keep[static_cast<size_t>(j)]);
        Vec w = svd.matrixV().col(keep[static_cast<size_t>(j)]).conjugate();
        cxd phase = fix_phase_largest(u);
        w *= phase;
        out.left.push_back(std::move(u));
        out.right.push_back(std::move(w));
    }
    return out;
}

/// Traces out the subsystems not listed in `keep` (0-based indices into
/// `dims`, axis 0 slowest).  Output ordering follows ascending kept indices.
inline Mat partial_trace(const Mat& density, const std::vector<Index>& dims,
                         const std::vector<int>& keep) {
    Index total = 1;
    for (Index d : dims) total *= d;
    if (density.rows() != total || density.cols() != total)
        throw DimensionMismatch("partial_trace: matrix does not match dims");
    if (keep.empty()) throw DimensionMismatch("partial_trace: keep set empty");

    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    std::vector<int> traced;
    for (int a = 0; a < static_cast<int>(dims.size()); ++a)
        if (!std::binary_search(kept.begin(), kept.end(), a)) traced.push_back(a);

    // Strides for axis-major (axis 0 slowest) flattening.
    std::vector<Index> stride(dims.size());
    Index acc = 1;
    for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
        stride[static_cast<size_t>(a)] = acc;
        acc *= dims[static_cast<size_t>(a)];
    }

    Index keep_dim = 1;
    for (int a : kept) keep_dim *= dims[static_cast<size_t>(a)];
    Index trace_dim = 1;
    for (int a : traced) trace_dim *= dims[static_cast<size_t>(a)];

    auto expand = [&](Index packed, const std::vector<int>& axes) {
        Index g = 0;
        for (int i = static_cast<int>(axes.size()) - 1; i >= 0; --i) {
            Index d = dims[static_cast<size_t>(axes[static_cast<size_t>(i)])];
            g += (packed % d) * stride[static_cast<size_t>(axes[static_cast<size_t>(i)])];
            packed /= d;
        }
        return g;
    };

    Mat out = Mat::Zero(keep_dim, keep_dim);
    for (Index i = 0; i < keep_dim; ++i) {
        Index gi = expand(i, kept);
        for (Index j = 0; j < keep_dim; ++j) {
            Index gj = expand(j, kept);
            cxd sum = 0.0;
            for (Index t = 0; t < trace_dim; ++t) {
                Index gt = expand(t, traced);
                sum += density(gi + gt, gj + gt);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

struct HermitianEig {
    RVec values;   // ascending
    Mat vectors;   // columns orthonormal
};

/// Eigendecomposition with a Hermiticity check up front.
inline HermitianEig hermitian_eig(const Mat& m, double check_tol = 1e-10) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("hermitian_eig: matrix not square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > check_tol)
        throw NotHermitian("hermitian_eig: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
    return {es.eigenvalues(), es.eigenvectors()};
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
inline double trace_norm_hermitian(const Mat& m, double check_tol = 1e-10) {
    HermitianEig eig = hermitian_eig(m, check_tol);
    return eig.values.cwiseAbs().sum();
}

/// Applies a unitary `u` acting on the combined index of axes
/// (axis_hi, axis_lo), with pair index = i_hi * dims[axis_lo] + i_lo.
inline void apply_pair_unitary(Vec& state, const std::vector<Index>& dims,
                               int axis_hi, int axis_lo, const Mat& u) {
    Index total = 1;
    for (Index d : dims) total *= d;
    if (state.size() != total)
        throw DimensionMismatch("apply_pair_unitary: state does not match dims");
    const Index dh = dims[static_cast<size_t>(axis_hi)];
    const Index dl = dims[static_cast<size_t>(axis_lo)];
    if (u.rows() != dh * dl || u.cols() != dh * dl)
        throw DimensionMismatch("apply_pair_unitary: unitary dimension mismatch");

    std::vector<Index> stride(dims.size());
    Index acc = 1;
    for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
        stride[static_cast<size_t>(a)] = acc;
        acc *= dims[static_cast<size_t>(a)];
    }
    const Index sh = stride[static_cast<size_t>(axis_hi)];
    const Index sl = stride[static_cast<size_t>(axis_lo)];

    // Enumerate base indices with both pair axes at zero.
    std::vector<int> rest;
    for (int a = 0; a < static_cast<int>(dims.size()); ++a)
        if (a != axis_hi && a != axis_lo) rest.push_back(a);
    Index rest_dim = 1;
    for (int a : rest) rest_dim *= dims[static_cast<size_t>(a)];

    Vec scratch(dh * dl);
    for (Index rpacked = 0; rpacked < rest_dim; ++rpacked) {
        Index base = 0;
        Index p = rpacked;
        for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
            Index d = dims[static_cast<size_t>(rest[static_cast<size_t>(i)])];
            base += (p % d) * stride[static_cast<size_t>(rest[static_cast<size_t>(i)])];
            p /= d;
        }
        for (Index ih = 0; ih < dh; ++ih)
            for (Index il = 0; il < dl; ++il)
                scratch(ih * dl + il) = state(base + ih * sh + il * sl);
        scratch = u * scratch;
        for (Index ih = 0; ih < dh; ++ih)
            for (Index il = 0; il < dl; ++il)
                state(base + ih * sh + il * sl) = scratch(ih * dl + il);
    }
}

}  // namespace statedisc
