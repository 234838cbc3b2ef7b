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

// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here, not taken from configuration.

#include <chrono>
#include <cstdio>
#include <random>

#include "statedisc/baselines.hpp"
#include "statedisc/discrimination.hpp"
#include "statedisc/memory_estimator.hpp"
#include "statedisc/rollup_mps.hpp"
#include "statedisc/rollup_ncopy.hpp"
#include "statedisc/scenario.hpp"

using namespace statedisc;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, double elapsed_s) {
    std::printf("[%s] criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", id, name,
                elapsed_s);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec basis2(int i) {
    Vec v = Vec::Zero(2);
    v(i) = 1.0;
    return v;
}

PureState random_state(std::mt19937& rng, Index d) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(d);
    for (Index i = 0; i < d; ++i) v(i) = cxd(g(rng), g(rng));
    return PureState(v, true);
}

Ensemble random_ensemble(std::mt19937& rng, Index k, Index d) {
    std::vector<PureState> states;
    for (Index i = 0; i < k; ++i) states.push_back(random_state(rng, d));
    return Ensemble(std::move(states), Ensemble::uniform_priors(static_cast<size_t>(k)));
}

Mps all_up(Index n) {
    return product_mps(std::vector<PureState>(static_cast<size_t>(n), PureState(basis2(0))));
}

}  // namespace

int main() {
    const double kHelstrom1 = 0.853553390593;  // (1 + sqrt(1/2)) / 2
    const double kHelstrom2 = 0.933012701892;  // (1 + sqrt(3/4)) / 2

    // 1. Gram power law on 100 random ensembles.
    {
        auto t0 = std::chrono::steady_clock::now();
        std::mt19937 rng(1001);
        bool ok = true;
        for (int trial = 0; trial < 100; ++trial) {
            const Index k = 2 + static_cast<Index>(rng() % 3);
            const Index d = 2 + static_cast<Index>(rng() % 3);
            const Index n = 1 + static_cast<Index>(rng() % 6);
            Ensemble e = random_ensemble(rng, k, d);
            auto [trace, final_ensemble] = run_ncopy_protocol(e, n);
            Mat g0 = gram_matrix(e);
            Mat gn = trace.gram_history.back();
            for (Index i = 0; i < k && ok; ++i)
                for (Index j = 0; j < k && ok; ++j)
                    if (std::abs(gn(i, j) - std::pow(g0(i, j), static_cast<double>(n))) >
                        1e-10)
                        ok = false;
        }
        const double el = seconds_since(t0);
        report(1, "Gram power law, 100 random ensembles", ok && el < 5.0, el);
    }

    // 2. Protocol matches the joint oracle.
    bool criterion2_scenarios_ok = true;
    double criterion3_worst = 0.0;
    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        Ensemble zp({PureState(basis2(0)),
                     PureState(Vec((basis2(0) + basis2(1)) / std::sqrt(2.0)), true)},
                    {0.5, 0.5});
        for (Index n = 1; n <= 4; ++n) {
            auto rep = compare_protocol_vs_oracle(zp, n, false);
            if (std::abs(rep.p_protocol - rep.p_joint_oracle) > 1e-8) ok = false;
            criterion3_worst = std::max(criterion3_worst, rep.decoupling_max);
            if (n == 1 && std::abs(rep.p_protocol - kHelstrom1) > 1e-8) ok = false;
            if (n == 2 && std::abs(rep.p_protocol - kHelstrom2) > 1e-8) ok = false;
        }
        std::mt19937 rng(1002);
        for (int trial = 0; trial < 20; ++trial) {
            const Index k = 2 + static_cast<Index>(rng() % 2);
            const Index d = 2 + static_cast<Index>(rng() % 2);
            const Index n = 1 + static_cast<Index>(rng() % 3);
            Ensemble e = random_ensemble(rng, k, d);
            auto rep = compare_protocol_vs_oracle(e, n, false);
            if (std::abs(rep.p_protocol - rep.p_joint_oracle) > 1e-8) ok = false;
            criterion3_worst = std::max(criterion3_worst, rep.decoupling_max);
        }
        criterion2_scenarios_ok = ok;
        const double el = seconds_since(t0);
        report(2, "protocol success equals joint optimum", ok && el < 30.0, el);
    }

    // 3. Decoupling residuals across every criterion-2 scenario.
    {
        auto t0 = std::chrono::steady_clock::now();
        report(3, "full-mode decoupling residuals <= 1e-10",
               criterion2_scenarios_ok && criterion3_worst <= 1e-10, seconds_since(t0));
    }

    // 4. MPS protocol on {noon(8), up^8} in compact mode.
    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        MpsEnsemble e({noon_mps(8), all_up(8)}, {0.5, 0.5});
        auto [trace, final_state] = run_mps_protocol(e, ProtocolMode::compact);
        if (trace.apparatus_cap > 4) ok = false;
        for (Index r : trace.apparatus_dim_history)
            if (r > 4) ok = false;
        Ensemble apparatus = extract_apparatus_ensemble(trace);
        const double p = helstrom_two_state(apparatus).success_probability;
        if (std::abs(p - kHelstrom1) > 1e-8) ok = false;
        Ensemble dense({PureState(mps_to_statevector(e.mps_list[0]), true),
                        PureState(mps_to_statevector(e.mps_list[1]), true)},
                       {0.5, 0.5});
        if (std::abs(p - helstrom_two_state(dense).success_probability) > 1e-8) ok = false;
        const double el = seconds_since(t0);
        report(4, "MPS roll-up, noon(8) vs up^8, rank <= DK", ok && el < 5.0, el);
    }

    // 5. D=1 reduction to the N-copy engine on 20 random cases.
    {
        auto t0 = std::chrono::steady_clock::now();
        std::mt19937 rng(1005);
        bool ok = true;
        for (int trial = 0; trial < 20; ++trial) {
            const Index n = 2 + static_cast<Index>(rng() % 3);
            const Index k = 2 + static_cast<Index>(rng() % 2);
            std::vector<std::vector<PureState>> site_states(static_cast<size_t>(k));
            for (Index i = 0; i < k; ++i)
                for (Index s = 0; s < n; ++s)
                    site_states[static_cast<size_t>(i)].push_back(random_state(rng, 2));
            auto priors = Ensemble::uniform_priors(static_cast<size_t>(k));
            auto [mps_trace, mps_final] =
                run_mps_protocol(product_ensemble(site_states, priors));
            auto [nc_trace, nc_final] = run_ncopy_protocol(site_states, priors);
            Ensemble apparatus = extract_apparatus_ensemble(mps_trace);
            if ((gram_matrix(apparatus) - gram_matrix(nc_final)).cwiseAbs().maxCoeff() >
                1e-10)
                ok = false;
        }
        report(5, "D=1 MPS reduction matches N-copy engine", ok, seconds_since(t0));
    }

    // 6. Reverse preparation fidelity.
    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        {
            MpsEnsemble e({noon_mps(4), all_up(4)}, {0.5, 0.5});
            auto [trace, final_state] = run_mps_protocol(e, ProtocolMode::full);
            Vec rec = reverse_prepare(trace, 0);
            if (std::norm(mps_to_statevector(noon_mps(4)).dot(rec)) < 1.0 - 1e-9)
                ok = false;
        }
        std::mt19937 rng(1006);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Mps> chains;
            for (int k = 0; k < 2; ++k) {
                std::vector<SiteTensor> sites;
                std::normal_distribution<double> g(0.0, 1.0);
                for (Index s = 0; s < 4; ++s) {
                    const Index l = (s == 0) ? 1 : 2;
                    const Index r = (s == 3) ? 1 : 2;
                    std::vector<Mat> mats;
                    for (Index p = 0; p < 2; ++p) {
                        Mat m(l, r);
                        for (Index a = 0; a < l; ++a)
                            for (Index b = 0; b < r; ++b) m(a, b) = cxd(g(rng), g(rng));
                        mats.push_back(std::move(m));
                    }
                    sites.emplace_back(std::move(mats));
                }
                Mps chain(std::move(sites));
                const double nrm = mps_norm(chain);
                for (auto& m : chain.sites[0].m) m /= nrm;
                chains.push_back(std::move(chain));
            }
            MpsEnsemble e(chains, {0.5, 0.5});
            auto [trace, final_state] = run_mps_protocol(e, ProtocolMode::full);
            for (Index k = 0; k < 2; ++k) {
                Vec rec = reverse_prepare(trace, k);
                Vec target = mps_to_statevector(e.mps_list[static_cast<size_t>(k)]);
                if (std::norm(target.dot(rec)) < 1.0 - 1e-9) ok = false;
            }
        }
        report(6, "reverse preparation fidelity >= 1 - 1e-9", ok, seconds_since(t0));
    }

    // 7. Local non-adaptive baseline gap at N=2.
    {
        auto t0 = std::chrono::steady_clock::now();
        Ensemble zp({PureState(basis2(0)),
                     PureState(Vec((basis2(0) + basis2(1)) / std::sqrt(2.0)), true)},
                    {0.5, 0.5});
        auto rep = compare_protocol_vs_oracle(zp, 2, true);
        const bool ok = rep.p_local_baseline >= 0.0 &&
                        rep.p_protocol - rep.p_local_baseline > 1e-4 &&
                        rep.local_gap > 1e-4;
        const double el = seconds_since(t0);
        report(7, "local baseline gap > 1e-4 at N=2", ok && el < 10.0, el);
    }

    // 8. Solver correctness: trine plus 200 random Helstrom matches.
    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::vector<PureState> trine;
        for (int k = 0; k < 3; ++k) {
            const double th = 2.0 * M_PI * k / 3.0;
            Vec v(2);
            v << std::cos(th / 2.0), std::sin(th / 2.0);
            trine.emplace_back(v, true);
        }
        Ensemble te(trine, Ensemble::uniform_priors(3));
        auto tr = min_error_povm(te);
        if (std::abs(tr.success_probability - 2.0 / 3.0) > 1e-6) ok = false;
        if (tr.certificate_residual > 1e-7) ok = false;
        std::mt19937 rng(1008);
        for (int trial = 0; trial < 200; ++trial) {
            const Index d = 2 + static_cast<Index>(rng() % 3);
            Ensemble e = random_ensemble(rng, 2, d);
            if (std::abs(min_error_povm(e).success_probability -
                         helstrom_two_state(e).success_probability) > 1e-8)
                ok = false;
        }
        report(8, "solver: trine 2/3, certificate, Helstrom matches", ok,
               seconds_since(t0));
    }

    // 9. Memory accounting.
    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        for (std::int64_t d = 1; d <= 4 && ok; ++d)
            for (std::int64_t n = 0; n <= 20 && ok; ++n) {
                std::int64_t count = 0;
                enumerate_partitions(n, d,
                                     [&](const std::vector<std::int64_t>&) { ++count; });
                if (young_count(n, d) != count) ok = false;
            }
        if (schur_memory_qubits(4, 2).qubits_total != 5) ok = false;
        for (std::int64_t d = 2; d <= 6 && ok; ++d)
            for (std::int64_t n :
                 {std::int64_t{1}, std::int64_t{10}, std::int64_t{100}, std::int64_t{1000},
                  std::int64_t{10000}}) {
                auto b = schur_memory_qubits(n, d);
                const double bound =
                    0.5 * d * (d - 1) * std::log2(static_cast<double>(n + d - 1)) +
                    (d - 1) * std::log2(static_cast<double>(n + 1)) + 2.0;
                if (static_cast<double>(b.qubits_total) > bound) ok = false;
            }
        const double el = seconds_since(t0);
        report(9, "memory counts, budget, logarithmic bound", ok && el < 5.0, el);
    }

    // 10. Deterministic report emission.
    {
        auto t0 = std::chrono::steady_clock::now();
        json doc;
        doc["task"] = "ncopy";
        doc["states"] = json::array();
        doc["states"].push_back({{"vector", {{1.0, 0.0}, {0.0, 0.0}}}});
        const double h = 1.0 / std::sqrt(2.0);
        doc["states"].push_back({{"vector", {{h, 0.0}, {h, 0.0}}}});
        doc["copies"] = 2;
        doc["mode"] = "full";
        doc["baselines"] = {"joint_oracle", "local_nonadaptive"};
        bool ok = true;
        const std::string first = emit_report_stable(run_scenario(doc));
        for (int rerun = 0; rerun < 3; ++rerun)
            if (emit_report_stable(run_scenario(doc)) != first) ok = false;
        json memdoc;
        memdoc["task"] = "memory";
        memdoc["memory"] = {{"n_max", 6}, {"d_max", 3}};
        const std::string mem_first = emit_report_stable(run_scenario(memdoc), "csv");
        if (emit_report_stable(run_scenario(memdoc), "csv") != mem_first) ok = false;
        report(10, "byte-identical reports across reruns", ok, seconds_since(t0));
    }

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", failures);
    return 1;
}
