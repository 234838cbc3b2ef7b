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

#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "statedisc/baselines.hpp"
#include "statedisc/discrimination.hpp"
#include "statedisc/memory_estimator.hpp"
#include "statedisc/mps.hpp"
#include "statedisc/rollup_mps.hpp"
#include "statedisc/rollup_ncopy.hpp"

namespace statedisc {

inline constexpr const char* kVersion = "statedisc 0.1.0";

using json = nlohmann::json;

enum class MeasurementKind { min_error, helstrom, unambiguous };

/// Parsed and validated scenario document.
struct ScenarioSpec {
    std::string task;  // ncopy | mps | memory
    // For ncopy: per-hypothesis, per-site pure states.  For mps: hypotheses.
    std::vector<std::vector<PureState>> site_states;
    std::vector<Mps> mps_states;
    std::vector<double> priors;
    Index copies = 1;
    MeasurementKind measurement = MeasurementKind::min_error;
    bool baseline_joint = false;
    bool baseline_local = false;
    ProtocolMode mode = ProtocolMode::compact;
    ToleranceConfig tol;
    unsigned seed = 0;
    std::int64_t memory_n_max = 8;
    std::int64_t memory_d_max = 3;
    json echo;  // the raw document, re-emitted in reports
};

/// Everything a report serializes.  Optional fields stay null when the
/// scenario did not request or support them.
struct ScenarioResult {
    std::string task;
    json echo;
    std::optional<double> p_protocol;
    std::optional<double> p_joint_oracle;
    std::optional<double> p_local_baseline;
    std::optional<double> local_gap;
    std::optional<Mat> gram_initial;
    std::optional<Mat> gram_final;
    std::optional<double> gram_error;
    std::optional<double> decoupling_max;
    std::optional<Index> schmidt_rank_max;
    std::optional<double> certificate_residual;
    std::optional<int> iterations;
    std::vector<SchurBudget> memory_table;
    double runtime_ms = 0.0;
};

namespace detail {

inline Vec parse_complex_vector(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty())
        throw SchemaError("field '" + field + "': expected nonempty array of [re, im] pairs");
    Vec v(static_cast<Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        const json& c = j[i];
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
            throw SchemaError("field '" + field + "': entry " + std::to_string(i) +
                              " is not a [re, im] pair");
        v(static_cast<Index>(i)) = cxd(c[0].get<double>(), c[1].get<double>());
    }
    return v;
}

inline Mps parse_mps_tensors(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty())
        throw SchemaError("field '" + field + "': expected nonempty array of site tensors");
    std::vector<SiteTensor> sites;
    for (size_t s = 0; s < j.size(); ++s) {
        const json& t = j[s];  // [left][phys][right] of [re, im]
        if (!t.is_array() || t.empty() || !t[0].is_array() || t[0].empty())
            throw SchemaError("field '" + field + "': site " + std::to_string(s) +
                              " is not a [left][phys][right] tensor");
        const size_t left = t.size(), phys = t[0].size(), right = t[0][0].size();
        std::vector<Mat> mats(phys, Mat::Zero(static_cast<Index>(left), static_cast<Index>(right)));
        for (size_t l = 0; l < left; ++l) {
            if (!t[l].is_array() || t[l].size() != phys)
                throw SchemaError("field '" + field + "': ragged physical index at site " +
                                  std::to_string(s));
            for (size_t p = 0; p < phys; ++p) {
                if (!t[l][p].is_array() || t[l][p].size() != right)
                    throw SchemaError("field '" + field + "': ragged bond index at site " +
                                      std::to_string(s));
                for (size_t r = 0; r < right; ++r) {
                    const json& c = t[l][p][r];
                    if (!c.is_array() || c.size() != 2)
                        throw SchemaError("field '" + field + "': entry is not [re, im]");
                    mats[p](static_cast<Index>(l), static_cast<Index>(r)) =
                        cxd(c[0].get<double>(), c[1].get<double>());
                }
            }
        }
        sites.emplace_back(std::move(mats));
    }
    return Mps(std::move(sites));
}

inline std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline std::string fmt_gram(const Mat& g) {
    std::string out = "[";
    for (Index i = 0; i < g.rows(); ++i) {
        if (i) out += ",";
        out += "[";
        for (Index j = 0; j < g.cols(); ++j) {
            if (j) out += ",";
            out += "[" + fmt(g(i, j).real()) + "," + fmt(g(i, j).imag()) + "]";
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace detail

inline ScenarioSpec parse_scenario(const json& doc) {
    if (!doc.is_object()) throw SchemaError("scenario document must be a JSON object");
    ScenarioSpec spec;
    spec.echo = doc;

    if (!doc.contains("task") || !doc["task"].is_string())
        throw SchemaError("field 'task': required, one of ncopy|mps|memory");
    spec.task = doc["task"].get<std::string>();
    if (spec.task != "ncopy" && spec.task != "mps" && spec.task != "memory")
        throw SchemaError("field 'task': must be one of ncopy|mps|memory");

    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        if (!t.is_object()) throw SchemaError("field 'tolerances': expected object");
        if (t.contains("rank_tol")) spec.tol.rank_tol = t["rank_tol"].get<double>();
        if (t.contains("svd_truncation_tol"))
            spec.tol.svd_truncation_tol = t["svd_truncation_tol"].get<double>();
        if (t.contains("unitarity_tol")) spec.tol.unitarity_tol = t["unitarity_tol"].get<double>();
        if (t.contains("certificate_tol"))
            spec.tol.certificate_tol = t["certificate_tol"].get<double>();
        if (t.contains("max_iterations"))
            spec.tol.max_iterations = t["max_iterations"].get<int>();
        try {
            spec.tol.validate();
        } catch (const Error& e) {
            throw SchemaError(std::string("field 'tolerances': ") + e.what());
        }
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer())
            throw SchemaError("field 'seed': expected integer");
        spec.seed = doc["seed"].get<unsigned>();
    }
    if (doc.contains("copies")) {
        if (!doc["copies"].is_number_integer() || doc["copies"].get<int>() < 1)
            throw SchemaError("field 'copies': expected integer >= 1");
        spec.copies = doc["copies"].get<Index>();
    }
    if (doc.contains("mode")) {
        const std::string m = doc["mode"].get<std::string>();
        if (m == "compact")
            spec.mode = ProtocolMode::compact;
        else if (m == "full")
            spec.mode = ProtocolMode::full;
        else
            throw SchemaError("field 'mode': must be compact|full");
    }
    if (doc.contains("measurement")) {
        const std::string m = doc["measurement"].get<std::string>();
        if (m == "min_error")
            spec.measurement = MeasurementKind::min_error;
        else if (m == "helstrom")
            spec.measurement = MeasurementKind::helstrom;
        else if (m == "unambiguous")
            spec.measurement = MeasurementKind::unambiguous;
        else
            throw SchemaError("field 'measurement': must be min_error|helstrom|unambiguous");
    }
    if (doc.contains("baselines")) {
        if (!doc["baselines"].is_array())
            throw SchemaError("field 'baselines': expected array");
        for (const auto& b : doc["baselines"]) {
            const std::string name = b.get<std::string>();
            if (name == "joint_oracle")
                spec.baseline_joint = true;
            else if (name == "local_nonadaptive")
                spec.baseline_local = true;
            else
                throw SchemaError("field 'baselines': unknown baseline '" + name + "'");
        }
    }

    if (spec.task == "memory") {
        if (doc.contains("memory")) {
            const json& m = doc["memory"];
            if (m.contains("n_max")) spec.memory_n_max = m["n_max"].get<std::int64_t>();
            if (m.contains("d_max")) spec.memory_d_max = m["d_max"].get<std::int64_t>();
        }
        if (spec.memory_n_max < 1 || spec.memory_d_max < 1)
            throw SchemaError("field 'memory': n_max and d_max must be >= 1");
        return spec;
    }

    if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty())
        throw SchemaError("field 'states': required nonempty array");
    const json& states = doc["states"];

    if (doc.contains("priors")) {
        if (!doc["priors"].is_array() || doc["priors"].size() != states.size())
            throw SchemaError("field 'priors': must match the number of states");
        double sum = 0.0;
        for (const auto& p : doc["priors"]) {
            if (!p.is_number()) throw SchemaError("field 'priors': entries must be numbers");
            spec.priors.push_back(p.get<double>());
            sum += p.get<double>();
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw SchemaError("field 'priors': must sum to 1 (got " + detail::fmt(sum) + ")");
        // Renormalize the parse-level slack so downstream invariants hold.
        for (double& p : spec.priors) p /= sum;
    } else {
        spec.priors = Ensemble::uniform_priors(states.size());
    }

    for (size_t k = 0; k < states.size(); ++k) {
        const json& s = states[k];
        const std::string field = "states[" + std::to_string(k) + "]";
        if (!s.is_object()) throw SchemaError("field '" + field + "': expected object");
        if (spec.task == "ncopy") {
            std::vector<PureState> sites;
            if (s.contains("vector")) {
                sites.emplace_back(detail::parse_complex_vector(s["vector"], field), true);
            } else if (s.contains("product")) {
                for (const auto& v : s["product"])
                    sites.emplace_back(detail::parse_complex_vector(v, field), true);
            } else {
                throw SchemaError("field '" + field + "': ncopy states need 'vector' or 'product'");
            }
            spec.site_states.push_back(std::move(sites));
        } else {
            if (s.contains("mps"))
                spec.mps_states.push_back(detail::parse_mps_tensors(s["mps"], field));
            else if (s.contains("noon"))
                spec.mps_states.push_back(noon_mps(s["noon"].get<Index>()));
            else if (s.contains("product")) {
                std::vector<PureState> sites;
                for (const auto& v : s["product"])
                    sites.emplace_back(detail::parse_complex_vector(v, field), true);
                spec.mps_states.push_back(product_mps(sites));
            } else if (s.contains("vector"))
                spec.mps_states.push_back(product_mps(
                    {PureState(detail::parse_complex_vector(s["vector"], field), true)}));
            else
                throw SchemaError("field '" + field +
                                  "': mps states need 'mps', 'noon', 'product' or 'vector'");
        }
    }

    if (spec.task == "ncopy") {
        const size_t n0 = spec.site_states[0].size();
        for (const auto& row : spec.site_states)
            if (row.size() != n0)
                throw SchemaError("field 'states': hypotheses disagree on site count");
    } else {
        const Index n0 = spec.mps_states[0].n_sites();
        for (const auto& m : spec.mps_states)
            if (m.n_sites() != n0)
                throw SchemaError("field 'states': hypotheses disagree on site count");
    }
    return spec;
}

namespace detail {

inline DiscriminationResult measure(const Ensemble& e, MeasurementKind kind,
                                    const ToleranceConfig& tol) {
    switch (kind) {
        case MeasurementKind::helstrom:
            return helstrom_two_state(e);
        case MeasurementKind::unambiguous:
            return unambiguous_two_state(e);
        case MeasurementKind::min_error:
        default:
            return min_error_povm(e, tol);
    }
}

inline Ensemble dense_ensemble(const std::vector<Mps>& mps_list,
                               const std::vector<double>& priors) {
    std::vector<PureState> states;
    for (const auto& m : mps_list) states.emplace_back(mps_to_statevector(m), true);
    return Ensemble(std::move(states), priors);
}

}  // namespace detail

/// Runs one scenario end to end.  Schema errors throw SchemaError; guard
/// violations (TooLarge*, SchmidtRankOverflow) propagate for the caller to
/// map onto exit codes.
inline ScenarioResult run_scenario(const ScenarioSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioResult res;
    res.task = spec.task;
    res.echo = spec.echo;

    if (spec.task == "memory") {
        for (std::int64_t d = 1; d <= spec.memory_d_max; ++d)
            for (std::int64_t n = 1; n <= spec.memory_n_max; ++n)
                res.memory_table.push_back(schur_memory_qubits(n, d));
    } else if (spec.task == "ncopy") {
        // Tile the per-site hypothesis lists `copies` times.
        std::vector<std::vector<PureState>> tiled;
        for (const auto& row : spec.site_states) {
            std::vector<PureState> t;
            for (Index c = 0; c < spec.copies; ++c)
                t.insert(t.end(), row.begin(), row.end());
            tiled.push_back(std::move(t));
        }
        auto [trace, final_ensemble] =
            run_ncopy_protocol(tiled, spec.priors, spec.mode, spec.tol);
        DiscriminationResult disc = detail::measure(final_ensemble, spec.measurement, spec.tol);
        res.p_protocol = disc.success_probability;
        res.certificate_residual = disc.certificate_residual;
        res.iterations = disc.iterations_used;

        // Initial Gram of the single-block ensemble; final apparatus Gram.
        std::vector<Vec> joint0;
        for (const auto& row : tiled) {
            Vec v = Vec::Ones(1);
            for (const auto& st : row) v = kron(std::move(v), st.amplitudes);
            joint0.push_back(std::move(v));
        }
        res.gram_initial = gram_matrix(joint0);
        res.gram_final = trace.gram_history.back();
        res.gram_error = (*res.gram_final - *res.gram_initial).cwiseAbs().maxCoeff();
        if (spec.mode == ProtocolMode::full) {
            double worst = 0.0;
            for (double r : trace.decoupling_residuals) worst = std::max(worst, r);
            res.decoupling_max = worst;
        }

        if (spec.baseline_joint) {
            std::vector<PureState> dense;
            for (auto& v : joint0) dense.emplace_back(std::move(v), true);
            Ensemble joint_ensemble(std::move(dense), spec.priors);
            DiscriminationResult joint =
                detail::measure(joint_ensemble, spec.measurement, spec.tol);
            res.p_joint_oracle = joint.success_probability;
        }
        if (spec.baseline_local) {
            bool symmetric_qubits = true;
            for (const auto& row : tiled)
                for (const auto& st : row)
                    if (st.dim() != 2) symmetric_qubits = false;
            for (const auto& row : tiled)
                for (const auto& st : row)
                    if ((st.amplitudes - row[0].amplitudes).norm() > 0) symmetric_qubits = false;
            if (!symmetric_qubits)
                throw GuardError("local_nonadaptive baseline requires identical qubit copies");
            std::vector<PureState> singles;
            for (const auto& row : tiled) singles.push_back(row[0]);
            Ensemble single(std::move(singles), spec.priors);
            LocalSearchConfig cfg;
            cfg.seed = spec.seed;
            res.p_local_baseline =
                local_nonadaptive_baseline(single, static_cast<Index>(tiled[0].size()), cfg)
                    .success;
            if (res.p_joint_oracle)
                res.local_gap = *res.p_joint_oracle - *res.p_local_baseline;
        }
    } else {  // mps
        std::vector<Mps> tiled;
        for (const auto& m : spec.mps_states) tiled.push_back(mps_tile(m, spec.copies));
        MpsEnsemble ensemble(tiled, spec.priors);
        auto [trace, final_state] = run_mps_protocol(ensemble, spec.mode, spec.tol);
        Ensemble apparatus = extract_apparatus_ensemble(trace);
        DiscriminationResult disc = detail::measure(apparatus, spec.measurement, spec.tol);
        res.p_protocol = disc.success_probability;
        res.certificate_residual = disc.certificate_residual;
        res.iterations = disc.iterations_used;
        res.gram_initial = trace.gram_initial;
        res.gram_final = trace.gram_final;
        res.gram_error = (trace.gram_final - trace.gram_initial).cwiseAbs().maxCoeff();
        Index rank_max = 0;
        for (Index r : trace.apparatus_dim_history) rank_max = std::max(rank_max, r);
        res.schmidt_rank_max = rank_max;
        if (spec.mode == ProtocolMode::full) {
            double worst = 0.0;
            for (double r : trace.decoupling_residuals) worst = std::max(worst, r);
            res.decoupling_max = worst;
        }
        if (spec.baseline_joint) {
            Ensemble dense = detail::dense_ensemble(tiled, spec.priors);
            DiscriminationResult joint = detail::measure(dense, spec.measurement, spec.tol);
            res.p_joint_oracle = joint.success_probability;
        }
        if (spec.baseline_local)
            throw GuardError("local_nonadaptive baseline is not defined for the mps task");
    }

    res.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

inline ScenarioResult run_scenario(const json& doc) { return run_scenario(parse_scenario(doc)); }

/// Serializes a report with fixed key order and 12-significant-digit
/// numbers.  Byte-identical across reruns except for runtime_ms.
inline std::string emit_report(const ScenarioResult& r, const std::string& format = "json") {
    using detail::fmt;
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : "null"; };

    if (format == "json") {
        std::string out = "{\n";
        out += "  \"version\": \"" + std::string(kVersion) + "\",\n";
        out += "  \"task\": \"" + r.task + "\",\n";
        out += "  \"scenario\": " + r.echo.dump() + ",\n";
        out += "  \"p_protocol\": " + opt(r.p_protocol) + ",\n";
        out += "  \"p_joint_oracle\": " + opt(r.p_joint_oracle) + ",\n";
        out += "  \"p_local_baseline\": " + opt(r.p_local_baseline) + ",\n";
        out += "  \"local_gap\": " + opt(r.local_gap) + ",\n";
        out += "  \"gram_initial\": " +
               (r.gram_initial ? detail::fmt_gram(*r.gram_initial) : "null") + ",\n";
        out += "  \"gram_final\": " +
               (r.gram_final ? detail::fmt_gram(*r.gram_final) : "null") + ",\n";
        out += "  \"gram_error\": " + opt(r.gram_error) + ",\n";
        out += "  \"decoupling_max\": " + opt(r.decoupling_max) + ",\n";
        out += "  \"schmidt_rank_max\": " +
               (r.schmidt_rank_max ? std::to_string(*r.schmidt_rank_max) : "null") + ",\n";
        out += "  \"certificate_residual\": " + opt(r.certificate_residual) + ",\n";
        out += "  \"iterations\": " +
               (r.iterations ? std::to_string(*r.iterations) : "null") + ",\n";
        if (!r.memory_table.empty()) {
            out += "  \"memory_table\": [\n";
            for (size_t i = 0; i < r.memory_table.size(); ++i) {
                const SchurBudget& b = r.memory_table[i];
                out += "    {\"n\": " + std::to_string(b.n) + ", \"d\": " + std::to_string(b.d) +
                       ", \"lambda_count_exact\": \"" + b.lambda_count_exact.str() +
                       "\", \"lambda_count_approx\": " + fmt(b.lambda_count_approx) +
                       ", \"max_irrep_dim_exact\": \"" + b.max_irrep_dim_exact.str() +
                       "\", \"max_irrep_dim_bound\": \"" + b.max_irrep_dim_bound.str() +
                       "\", \"qubits_label\": " + std::to_string(b.qubits_label) +
                       ", \"qubits_unitary\": " + std::to_string(b.qubits_unitary) +
                       ", \"qubits_total\": " + std::to_string(b.qubits_total) + "}";
                out += (i + 1 < r.memory_table.size()) ? ",\n" : "\n";
            }
            out += "  ],\n";
        } else {
            out += "  \"memory_table\": null,\n";
        }
        out += "  \"runtime_ms\": " + fmt(r.runtime_ms) + "\n";
        out += "}\n";
        return out;
    }
    if (format == "csv") {
        if (!r.memory_table.empty()) {
            std::string out =
                "n,d,lambda_count_exact,lambda_count_approx,max_irrep_dim_exact,"
                "max_irrep_dim_bound,qubits_label,qubits_unitary,qubits_total\n";
            for (const SchurBudget& b : r.memory_table)
                out += std::to_string(b.n) + "," + std::to_string(b.d) + "," +
                       b.lambda_count_exact.str() + "," + fmt(b.lambda_count_approx) + "," +
                       b.max_irrep_dim_exact.str() + "," + b.max_irrep_dim_bound.str() + "," +
                       std::to_string(b.qubits_label) + "," + std::to_string(b.qubits_unitary) +
                       "," + std::to_string(b.qubits_total) + "\n";
            return out;
        }
        auto cell = [](const std::optional<double>& v) { return v ? detail::fmt(*v) : ""; };
        std::string out =
            "task,p_protocol,p_joint_oracle,p_local_baseline,local_gap,gram_error,"
            "decoupling_max,schmidt_rank_max,certificate_residual,iterations,runtime_ms\n";
        out += r.task + "," + cell(r.p_protocol) + "," + cell(r.p_joint_oracle) + "," +
               cell(r.p_local_baseline) + "," + cell(r.local_gap) + "," + cell(r.gram_error) +
               "," + cell(r.decoupling_max) + "," +
               (r.schmidt_rank_max ? std::to_string(*r.schmidt_rank_max) : "") + "," +
               cell(r.certificate_residual) + "," +
               (r.iterations ? std::to_string(*r.iterations) : "") + "," + fmt(r.runtime_ms) +
               "\n";
        return out;
    }
    throw Error("emit_report: unknown format '" + format + "'");
}

/// Report text with the runtime field pinned; what the determinism contract
/// compares.
inline std::string emit_report_stable(ScenarioResult r, const std::string& format = "json") {
    r.runtime_ms = 0.0;
    return emit_report(r, format);
}

}  // namespace statedisc
