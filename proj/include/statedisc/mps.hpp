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
#include <utility>
#include <vector>

#include "statedisc/states.hpp"

namespace statedisc {

/// One MPS site tensor, stored as one (left-bond x right-bond) matrix per
/// physical index.
struct SiteTensor {
    std::vector<Mat> m;

    SiteTensor() = default;
    explicit SiteTensor(std::vector<Mat> mats) : m(std::move(mats)) {
        if (m.empty()) throw EmptyInput("SiteTensor: no physical index");
        for (const auto& a : m)
            if (a.rows() != m[0].rows() || a.cols() != m[0].cols())
                throw DimensionMismatch("SiteTensor: inconsistent bond dims");
    }

    Index left() const { return m[0].rows(); }
    Index phys() const { return static_cast<Index>(m.size()); }
    Index right() const { return m[0].cols(); }
};

/// An open-boundary matrix product state.  Boundary bonds have dimension 1.
struct Mps {
    std::vector<SiteTensor> sites;

    Mps() = default;
    explicit Mps(std::vector<SiteTensor> s) : sites(std::move(s)) {
        if (sites.empty()) throw EmptyInput("Mps: no sites");
        if (sites.front().left() != 1 || sites.back().right() != 1)
            throw DimensionMismatch("Mps: boundary bond dims must be 1");
        for (size_t n = 0; n + 1 < sites.size(); ++n)
            if (sites[n].right() != sites[n + 1].left())
                throw DimensionMismatch("Mps: adjacent bond dims inconsistent");
    }

    Index n_sites() const { return static_cast<Index>(sites.size()); }

    std::vector<Index> physical_dims() const {
        std::vector<Index> d;
        for (const auto& s : sites) d.push_back(s.phys());
        return d;
    }

    /// Bond dimensions across the n_sites-1 interior cuts.
    std::vector<Index> bond_dims() const {
        std::vector<Index> b;
        for (size_t n = 0; n + 1 < sites.size(); ++n) b.push_back(sites[n].right());
        return b;
    }

    Index max_bond_dim() const {
        Index d = 1;
        for (Index b : bond_dims()) d = std::max(d, b);
        return d;
    }

    Index dense_dim() const {
        Index total = 1;
        for (const auto& s : sites) {
            if (total > (Index{1} << 20) / std::max<Index>(s.phys(), 1))
                throw TooLarge("Mps: dense dimension exceeds 2^20");
            total *= s.phys();
        }
        return total;
    }
};

/// Transfer-matrix overlap <a|b>, never forming the dense vectors.
inline cxd mps_overlap(const Mps& a, const Mps& b) {
    if (a.n_sites() != b.n_sites())
        throw SiteCountMismatch("mps_overlap: site count mismatch");
    Mat env = Mat::Ones(1, 1);
    for (Index n = 0; n < a.n_sites(); ++n) {
        const SiteTensor& ta = a.sites[static_cast<size_t>(n)];
        const SiteTensor& tb = b.sites[static_cast<size_t>(n)];
        if (ta.phys() != tb.phys())
            throw DimensionMismatch("mps_overlap: physical dims mismatch");
        Mat next = Mat::Zero(ta.right(), tb.right());
        for (Index p = 0; p < ta.phys(); ++p)
            next += ta.m[static_cast<size_t>(p)].adjoint() * env * tb.m[static_cast<size_t>(p)];
        env = std::move(next);
    }
    return env(0, 0);
}

inline double mps_norm(const Mps& a) {
    return std::sqrt(std::max(0.0, mps_overlap(a, a).real()));
}

/// Full contraction into a dense statevector (site 0 index slowest).
inline Vec mps_to_statevector(const Mps& mps) {
    const Index total = mps.dense_dim();  // throws TooLarge past 2^20
    Mat acc = Mat::Ones(1, 1);            // (dense-so-far) x (current bond)
    for (const auto& site : mps.sites) {
        Mat next(acc.rows() * site.phys(), site.right());
        for (Index p = 0; p < site.phys(); ++p) {
            Mat block = acc * site.m[static_cast<size_t>(p)];
            for (Index i = 0; i < acc.rows(); ++i)
                next.row(i * site.phys() + p) = block.row(i);
        }
        acc = std::move(next);
    }
    (void)total;
    return acc.col(0);
}

/// K MPS hypotheses over identical site structure, with priors.
struct MpsEnsemble {
    std::vector<Mps> mps_list;
    std::vector<double> priors;

    MpsEnsemble() = default;
    MpsEnsemble(std::vector<Mps> list, std::vector<double> p)
        : mps_list(std::move(list)), priors(std::move(p)) {
        if (mps_list.empty()) throw EmptyInput("MpsEnsemble: no hypotheses");
        if (priors.size() != mps_list.size())
            throw DimensionMismatch("MpsEnsemble: priors/states length mismatch");
        double sum = 0.0;
        for (double q : priors) {
            if (q < 1e-12) throw InvalidPrior("MpsEnsemble: prior below 1e-12");
            sum += q;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw InvalidPrior("MpsEnsemble: priors do not sum to 1");
        const auto dims = mps_list[0].physical_dims();
        for (const auto& m : mps_list) {
            if (m.n_sites() != mps_list[0].n_sites())
                throw SiteCountMismatch("MpsEnsemble: site counts differ");
            if (m.physical_dims() != dims)
                throw DimensionMismatch("MpsEnsemble: physical dims differ");
        }
    }

    Index size() const { return static_cast<Index>(mps_list.size()); }
    Index n_sites() const { return mps_list[0].n_sites(); }
    Index max_bond_dim() const {
        Index d = 1;
        for (const auto& m : mps_list) d = std::max(d, m.max_bond_dim());
        return d;
    }
};

inline Mat gram_matrix(const MpsEnsemble& e) {
    const Index k = e.size();
    Mat g(k, k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            g(i, j) = mps_overlap(e.mps_list[static_cast<size_t>(i)],
                                  e.mps_list[static_cast<size_t>(j)]);
    return g;
}

/// Bond-dimension-1 MPS for a product of per-site pure states.
inline Mps product_mps(const std::vector<PureState>& site_states) {
    std::vector<SiteTensor> sites;
    for (const auto& st : site_states) {
        std::vector<Mat> mats;
        for (Index p = 0; p < st.dim(); ++p) {
            Mat a(1, 1);
            a(0, 0) = st.amplitudes(p);
            mats.push_back(a);
        }
        sites.emplace_back(std::move(mats));
    }
    return Mps(std::move(sites));
}

/// Hypothesis k is the product of its per-site states; represented as a
/// bond-dimension-1 MpsEnsemble.  `site_states[k][n]` is hypothesis k's
/// state on site n.
inline MpsEnsemble product_ensemble(const std::vector<std::vector<PureState>>& site_states,
                                    const std::vector<double>& priors) {
    if (site_states.empty()) throw EmptyInput("product_ensemble: no hypotheses");
    const size_t n = site_states[0].size();
    for (const auto& row : site_states) {
        if (row.size() != n)
            throw SiteCountMismatch("product_ensemble: hypotheses have different site counts");
        for (size_t i = 0; i < n; ++i)
            if (row[i].dim() != site_states[0][i].dim())
                throw DimensionMismatch("product_ensemble: per-site dims differ");
    }
    std::vector<Mps> list;
    for (const auto& row : site_states) list.push_back(product_mps(row));
    return MpsEnsemble(std::move(list), priors);
}

/// (|up>^N + |down>^N)/sqrt(2) as a bond-dimension-2 MPS (1 for N=1).
inline Mps noon_mps(Index n) {
    if (n < 1) throw Error("noon_mps: N must be >= 1");
    const double r = 1.0 / std::sqrt(2.0);
    if (n == 1) {
        Mat a0(1, 1), a1(1, 1);
        a0(0, 0) = r;
        a1(0, 0) = r;
        return Mps({SiteTensor({a0, a1})});
    }
    std::vector<SiteTensor> sites;
    {
        Mat a0 = Mat::Zero(1, 2), a1 = Mat::Zero(1, 2);
        a0(0, 0) = r;
        a1(0, 1) = r;
        sites.emplace_back(std::vector<Mat>{a0, a1});
    }
    for (Index i = 1; i + 1 < n; ++i) {
        Mat a0 = Mat::Zero(2, 2), a1 = Mat::Zero(2, 2);
        a0(0, 0) = 1.0;
        a1(1, 1) = 1.0;
        sites.emplace_back(std::vector<Mat>{a0, a1});
    }
    {
        Mat a0 = Mat::Zero(2, 1), a1 = Mat::Zero(2, 1);
        a0(0, 0) = 1.0;
        a1(1, 0) = 1.0;
        sites.emplace_back(std::vector<Mat>{a0, a1});
    }
    return Mps(std::move(sites));
}

/// M aligned copies as one NM-site chain; bond dimension 1 across copy
/// boundaries.
inline Mps mps_tile(const Mps& mps, Index m) {
    if (m < 1) throw Error("mps_tile: M must be >= 1");
    std::vector<SiteTensor> sites;
    for (Index c = 0; c < m; ++c)
        for (const auto& s : mps.sites) sites.push_back(s);
    return Mps(std::move(sites));
}

/// The ensemble's purification: one MPS over N+1 sites where the last site
/// is the reference R with physical dimension K, carrying weights sqrt(p_k).
struct PurifiedMps {
    Mps chain;            // N system sites followed by the reference site
    RVec weights;         // sqrt(p_k)
    Index hypothesis_count = 0;

    Index n_system_sites() const { return chain.n_sites() - 1; }
};

inline PurifiedMps purify_ensemble(const MpsEnsemble& e) {
    const Index k = e.size();
    const Index n = e.n_sites();
    std::vector<SiteTensor> sites;
    for (Index site = 0; site < n; ++site) {
        Index lsum = 0, rsum = 0;
        for (const auto& m : e.mps_list) {
            lsum += m.sites[static_cast<size_t>(site)].left();
            rsum += m.sites[static_cast<size_t>(site)].right();
        }
        const Index lt = (site == 0) ? 1 : lsum;
        const Index phys = e.mps_list[0].sites[static_cast<size_t>(site)].phys();
        std::vector<Mat> mats;
        for (Index p = 0; p < phys; ++p) {
            Mat a = Mat::Zero(lt, rsum);
            Index lo = 0, ro = 0;
            for (const auto& m : e.mps_list) {
                const Mat& blk = m.sites[static_cast<size_t>(site)].m[static_cast<size_t>(p)];
                a.block((site == 0) ? 0 : lo, ro, blk.rows(), blk.cols()) = blk;
                lo += blk.rows();
                ro += blk.cols();
            }
            mats.push_back(std::move(a));
        }
        sites.emplace_back(std::move(mats));
    }
    // Reference site: physical index k selects member k's boundary bond,
    // weighted by sqrt(p_k).
    {
        std::vector<Mat> mats;
        for (Index hk = 0; hk < k; ++hk) {
            Mat a = Mat::Zero(k, 1);
            a(hk, 0) = std::sqrt(e.priors[static_cast<size_t>(hk)]);
            mats.push_back(std::move(a));
        }
        sites.emplace_back(std::move(mats));
    }
    PurifiedMps out;
    out.chain = Mps(std::move(sites));
    out.weights.resize(k);
    for (Index hk = 0; hk < k; ++hk)
        out.weights(hk) = std::sqrt(e.priors[static_cast<size_t>(hk)]);
    out.hypothesis_count = k;
    return out;
}

}  // namespace statedisc
