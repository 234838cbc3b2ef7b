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

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "statedisc/scenario.hpp"

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitGuard = 3;

statedisc::json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw statedisc::SchemaError("cannot open scenario file: " + path);
    statedisc::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw statedisc::SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return doc;
}

struct OutputOptions {
    std::string report_path;
    std::string format = "json";
    bool quiet = false;
};

void write_report(const statedisc::ScenarioResult& result, const OutputOptions& out) {
    const std::string text = statedisc::emit_report(result, out.format);
    if (!out.quiet) std::cout << text;
    if (!out.report_path.empty()) {
        std::ofstream f(out.report_path);
        if (!f) throw statedisc::Error("cannot write report file: " + out.report_path);
        f << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherent-measurement state discrimination simulator"};
    app.require_subcommand(1);

    std::string spec_path;
    OutputOptions out;
    std::optional<std::string> mode_override;
    std::optional<unsigned> seed_override;
    std::optional<double> tol_rank, tol_cert;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--report", out.report_path, "Also write the report to this file");
        cmd->add_option("--format", out.format, "Report format: json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--mode", mode_override, "Override protocol mode: compact|full")
            ->check(CLI::IsMember({"compact", "full"}));
        cmd->add_option("--seed", seed_override, "Override the baseline search seed");
        cmd->add_option("--tol-rank", tol_rank, "Override rank_tol");
        cmd->add_option("--tol-cert", tol_cert, "Override certificate_tol");
        cmd->add_flag("--quiet", out.quiet, "Suppress stdout report");
    };

    CLI::App* run = app.add_subcommand("run", "Run a scenario file");
    run->add_option("spec", spec_path, "Scenario JSON file")->required();
    add_common(run);

    CLI::App* compare = app.add_subcommand(
        "compare", "Run a scenario with both oracles forced on");
    compare->add_option("spec", spec_path, "Scenario JSON file")->required();
    add_common(compare);

    CLI::App* validate = app.add_subcommand("validate", "Schema-check a scenario file");
    validate->add_option("spec", spec_path, "Scenario JSON file")->required();

    std::int64_t n_max = 8, d_max = 3;
    CLI::App* memory = app.add_subcommand("estimate-memory", "Emit a register budget table");
    memory->add_option("--n-max", n_max, "Largest copy count N");
    memory->add_option("--d-max", d_max, "Largest local dimension d");
    add_common(memory);

    CLI11_PARSE(app, argc, argv);

    try {
        statedisc::ScenarioSpec spec;
        if (app.got_subcommand(memory)) {
            statedisc::json doc = {{"task", "memory"},
                                   {"memory", {{"n_max", n_max}, {"d_max", d_max}}}};
            spec = statedisc::parse_scenario(doc);
        } else {
            spec = statedisc::parse_scenario(load_document(spec_path));
            if (app.got_subcommand(compare)) {
                spec.baseline_joint = true;
                if (spec.task == "ncopy") {
                    bool qubit_copies = true;
                    for (const auto& row : spec.site_states)
                        for (const auto& st : row)
                            if (st.dim() != 2 ||
                                (st.amplitudes - row[0].amplitudes).norm() > 0)
                                qubit_copies = false;
                    spec.baseline_local = qubit_copies;
                }
            }
        }
        if (app.got_subcommand(validate)) {
            std::cout << "ok\n";
            return 0;
        }
        if (mode_override)
            spec.mode = (*mode_override == "full") ? statedisc::ProtocolMode::full
                                                   : statedisc::ProtocolMode::compact;
        if (seed_override) spec.seed = *seed_override;
        if (tol_rank) spec.tol.rank_tol = *tol_rank;
        if (tol_cert) spec.tol.certificate_tol = *tol_cert;
        spec.tol.validate();

        write_report(statedisc::run_scenario(spec), out);
        return 0;
    } catch (const statedisc::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const statedisc::TooLarge& e) {
        std::cerr << "guard error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const statedisc::TooLargeForFullMode& e) {
        std::cerr << "guard error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const statedisc::GuardError& e) {
        std::cerr << "guard error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
