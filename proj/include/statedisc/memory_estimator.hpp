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

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <vector>

#include "statedisc/errors.hpp"

namespace statedisc {

using BigInt = boost::multiprecision::cpp_int;

/// Register budget for storing the Schur-basis sufficient statistic of N
/// identically prepared d-level systems: the diagram label plus the largest
/// SU(d) irrep.  The permutation register is charged nothing (it can be
/// discarded as soon as it is produced).
struct SchurBudget {
    std::int64_t n = 0;
    std::int64_t d = 0;
    BigInt lambda_count_exact;
    double lambda_count_approx = 0.0;       // (1/d!) * C(N, d)
    BigInt max_irrep_dim_exact;
    BigInt max_irrep_dim_bound;             // (N + d - 1)^{d(d-1)/2}
    int qubits_label = 0;
    int qubits_unitary = 0;
    int qubits_total = 0;
};

namespace detail {

inline int ceil_log2(const BigInt& x) {
    if (x <= 1) return 0;
    BigInt y = x - 1;
    return static_cast<int>(boost::multiprecision::msb(y)) + 1;
}

/// Weyl dimension formula for the SU(d) irrep with highest weight lambda
/// (a partition padded with zeros to d rows).
inline BigInt weyl_dim(const std::vector<std::int64_t>& lambda, std::int64_t d) {
    BigInt num = 1, den = 1;
    for (std::int64_t i = 0; i < d; ++i)
        for (std::int64_t j = i + 1; j < d; ++j) {
            const std::int64_t li = i < static_cast<std::int64_t>(lambda.size()) ? lambda[static_cast<size_t>(i)] : 0;
            const std::int64_t lj = j < static_cast<std::int64_t>(lambda.size()) ? lambda[static_cast<size_t>(j)] : 0;
            num *= li - lj + j - i;
            den *= j - i;
        }
    return num / den;
}

inline double log_weyl_dim(const std::vector<std::int64_t>& lambda, std::int64_t d) {
    double s = 0.0;
    for (std::int64_t i = 0; i < d; ++i)
        for (std::int64_t j = i + 1; j < d; ++j) {
            const std::int64_t li = i < static_cast<std::int64_t>(lambda.size()) ? lambda[static_cast<size_t>(i)] : 0;
            const std::int64_t lj = j < static_cast<std::int64_t>(lambda.size()) ? lambda[static_cast<size_t>(j)] : 0;
            s += std::log(static_cast<double>(li - lj + j - i)) -
                 std::log(static_cast<double>(j - i));
        }
    return s;
}

template <typename F>
inline void for_each_partition(std::int64_t n, std::int64_t max_parts,
                               std::int64_t max_value, std::vector<std::int64_t>& prefix,
                               F&& visit) {
    if (n == 0) {
        visit(prefix);
        return;
    }
    if (max_parts == 0) return;
    for (std::int64_t first = std::min(n, max_value); first >= 1; --first) {
        prefix.push_back(first);
        for_each_partition(n - first, max_parts - 1, first, prefix, visit);
        prefix.pop_back();
    }
}

inline bool valid_partition(const std::vector<std::int64_t>& lambda) {
    for (size_t i = 0; i + 1 < lambda.size(); ++i)
        if (lambda[i] < lambda[i + 1]) return false;
    return lambda.empty() || lambda.back() >= 0;
}

}  // namespace detail

/// Enumerates all partitions of n into at most d parts (rows of a Young
/// diagram), invoking `visit` on each.
template <typename F>
inline void enumerate_partitions(std::int64_t n, std::int64_t d, F&& visit) {
    std::vector<std::int64_t> prefix;
    detail::for_each_partition(n, d, n, prefix, std::forward<F>(visit));
}

/// Exact count of Young diagrams with n boxes in at most d rows, by dynamic
/// programming over the largest allowed part count.
inline BigInt young_count(std::int64_t n, std::int64_t d) {
    if (n < 0 || d < 1) throw Error("young_count: require N >= 0, d >= 1");
    std::vector<BigInt> table(static_cast<size_t>(n) + 1, 0);
    table[0] = 1;
    for (std::int64_t parts = 1; parts <= d; ++parts)
        for (std::int64_t m = parts; m <= n; ++m)
            table[static_cast<size_t>(m)] += table[static_cast<size_t>(m - parts)];
    return table[static_cast<size_t>(n)];
}

/// The companion approximation (1/d!) * C(N, d), reported alongside the
/// exact count but never used in budgets.
inline double young_count_approx(std::int64_t n, std::int64_t d) {
    double v = 1.0;
    for (std::int64_t i = 0; i < d; ++i)
        v *= static_cast<double>(n - i) / static_cast<double>(d - i);
    for (std::int64_t i = 2; i <= d; ++i) v /= static_cast<double>(i);
    return v;
}

/// Largest dimension of an SU(d) irrep labeled by a partition of n.  Small
/// instances are enumerated exhaustively; large ones are found by a
/// multi-scale hill climb on the log-concave Weyl dimension followed by a
/// windowed exhaustive check around the climb's endpoint.
inline BigInt max_irrep_dim(std::int64_t n, std::int64_t d) {
    if (n < 0 || d < 1) throw Error("max_irrep_dim: require N >= 0, d >= 1");
    if (n == 0 || d == 1) return 1;

    if (young_count(n, d) <= 200000) {
        BigInt best = 0;
        enumerate_partitions(n, d, [&](const std::vector<std::int64_t>& lambda) {
            BigInt dim = detail::weyl_dim(lambda, d);
            if (dim > best) best = dim;
        });
        return best;
    }

    // Hill climb from a few starting shapes, moving t boxes between row
    // pairs with t doubling from 1 up to n.
    auto climb = [&](std::vector<std::int64_t> lambda) {
        double cur = detail::log_weyl_dim(lambda, d);
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::int64_t i = 0; i < d; ++i)
                for (std::int64_t j = 0; j < d; ++j) {
                    if (i == j) continue;
                    for (std::int64_t t = 1; t <= n; t *= 2) {
                        std::vector<std::int64_t> cand = lambda;
                        cand[static_cast<size_t>(i)] += t;
                        cand[static_cast<size_t>(j)] -= t;
                        if (cand[static_cast<size_t>(j)] < 0 ||
                            !detail::valid_partition(cand))
                            continue;
                        double v = detail::log_weyl_dim(cand, d);
                        if (v > cur + 1e-12) {
                            cur = v;
                            lambda = std::move(cand);
                            improved = true;
                        }
                    }
                }
        }
        return lambda;
    };

    std::vector<std::vector<std::int64_t>> starts;
    {
        std::vector<std::int64_t> balanced(static_cast<size_t>(d), n / d);
        for (std::int64_t i = 0; i < n % d; ++i) balanced[static_cast<size_t>(i)] += 1;
        starts.push_back(balanced);
        std::vector<std::int64_t> skew(static_cast<size_t>(d), 0);
        skew[0] = n;
        starts.push_back(skew);
    }

    std::vector<std::int64_t> best_lambda = starts[0];
    double best_log = -1.0;
    for (auto& s0 : starts) {
        auto l = climb(s0);
        double v = detail::log_weyl_dim(l, d);
        if (v > best_log) {
            best_log = v;
            best_lambda = l;
        }
    }

    // Windowed exhaustive check around the climb endpoint.
    const std::int64_t w = 3;
    std::vector<std::int64_t> window_best = best_lambda;
    std::vector<std::int64_t> cand(static_cast<size_t>(d), 0);
    std::function<void(std::int64_t, std::int64_t)> sweep =
        [&](std::int64_t row, std::int64_t used) {
            if (row == d - 1) {
                const std::int64_t last = n - used;
                if (last < 0 || std::llabs(last - best_lambda[static_cast<size_t>(row)]) > w)
                    return;
                cand[static_cast<size_t>(row)] = last;
                if (!detail::valid_partition(cand)) return;
                if (detail::log_weyl_dim(cand, d) >
                    detail::log_weyl_dim(window_best, d) + 0.0)
                    window_best = cand;
                return;
            }
            const std::int64_t center = best_lambda[static_cast<size_t>(row)];
            for (std::int64_t v = std::max<std::int64_t>(0, center - w);
                 v <= center + w; ++v) {
                if (used + v > n) continue;
                cand[static_cast<size_t>(row)] = v;
                sweep(row + 1, used + v);
            }
        };
    sweep(0, 0);
    return detail::weyl_dim(window_best, d);
}

/// (N + d - 1)^{d(d-1)/2}: the closed-form upper bound on the largest irrep.
inline BigInt max_irrep_dim_bound(std::int64_t n, std::int64_t d) {
    BigInt base = n + d - 1;
    BigInt out = 1;
    for (std::int64_t i = 0; i < d * (d - 1) / 2; ++i) out *= base;
    return out;
}

/// Full qubit budget for the label and SU(d) registers.
inline SchurBudget schur_memory_qubits(std::int64_t n, std::int64_t d) {
    if (n < 1 || d < 1) throw Error("schur_memory_qubits: require N >= 1, d >= 1");
    SchurBudget b;
    b.n = n;
    b.d = d;
    b.lambda_count_exact = young_count(n, d);
    b.lambda_count_approx = young_count_approx(n, d);
    b.max_irrep_dim_exact = max_irrep_dim(n, d);
    b.max_irrep_dim_bound = max_irrep_dim_bound(n, d);
    b.qubits_label = detail::ceil_log2(b.lambda_count_exact);
    b.qubits_unitary = detail::ceil_log2(b.max_irrep_dim_exact);
    b.qubits_total = b.qubits_label + b.qubits_unitary;
    return b;
}

}  // namespace statedisc
