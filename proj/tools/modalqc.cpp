// Copyright 2026 The modalqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "modalqc/cli.hpp"

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<std::size_t> n_modes;
    std::optional<std::size_t> marked;
    std::optional<std::size_t> iterations;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<std::string> output;
    std::optional<std::size_t> basis_state;
    std::optional<std::string> amplitudes;
};

void add_common_flags(CLI::App &app, Flags &f) {
    app.add_option("--config", f.config, "JSON config file; flags override its values");
    app.add_option("--n-modes", f.n_modes, "Number of register modes N (>= 2)");
    app.add_option("--shots", f.shots, "Readout repetitions (default 10000)");
    app.add_option("--seed", f.seed, "Seed for every random draw (default 0)");
    app.add_option("--format", f.format, "Output format: table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--output", f.output, "Write results to this file instead of stdout");
}

void add_search_flags(CLI::App &app, Flags &f) {
    app.add_option("--marked", f.marked, "Index of the marked mode");
    app.add_option("--iterations", f.iterations, "Grover iterations (default round(pi/4 sqrt N))");
}

void add_readout_flags(CLI::App &app, Flags &f) {
    app.add_option("--basis-state", f.basis_state, "Prepare the particle in this mode");
    app.add_option("--amplitudes", f.amplitudes, "Inline JSON array of amplitudes, numbers or [re, im] pairs");
}

nlohmann::json merge(const Flags &f, std::optional<std::string> experiment) {
    nlohmann::json raw = f.config ? modalqc::cli::read_config_file(*f.config) : nlohmann::json::object();
    if (experiment) {
        raw["experiment"] = *experiment;
    }
    if (f.n_modes) raw["n_modes"] = *f.n_modes;
    if (f.marked) raw["marked_index"] = *f.marked;
    if (f.iterations) raw["n_iterations"] = *f.iterations;
    if (f.shots) raw["n_shots"] = *f.shots;
    if (f.seed) raw["seed"] = *f.seed;
    if (f.format) raw["output_format"] = *f.format;
    if (f.output) raw["output_path"] = *f.output;
    if (f.basis_state) raw["basis_state"] = *f.basis_state;
    if (f.amplitudes) {
        try {
            raw["amplitudes"] = nlohmann::json::parse(*f.amplitudes);
        } catch (const nlohmann::json::parse_error &e) {
            throw modalqc::Error(modalqc::ErrorCode::ParseError, std::string("--amplitudes: ") + e.what());
        }
    }
    return raw;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Single-particle modal register simulator with particle-counting readout"};
    app.require_subcommand(1);

    Flags flags;
    std::optional<std::string> chosen;

    CLI::App *run = app.add_subcommand("run", "Run an experiment given by subcommand and/or --config");
    run->require_subcommand(0, 1);
    add_common_flags(*run, flags);
    add_search_flags(*run, flags);
    add_readout_flags(*run, flags);

    CLI::App *grover = run->add_subcommand("grover", "Grover search on the modal register, then binary readout");
    add_common_flags(*grover, flags);
    add_search_flags(*grover, flags);

    CLI::App *readout = run->add_subcommand("readout_demo", "Cascaded log2 N detector readout of a given state");
    add_common_flags(*readout, flags);
    add_readout_flags(*readout, flags);

    CLI::App *equivalence =
        run->add_subcommand("equivalence_check", "Compare quantum and classical correlations after a random unitary");
    add_common_flags(*equivalence, flags);

    CLI::App *resources = run->add_subcommand("resource_report", "Resource ledger and classical comparison");
    add_common_flags(*resources, flags);
    add_search_flags(*resources, flags);

    for (CLI::App *sub : {grover, readout, equivalence, resources}) {
        sub->callback([sub, &chosen] { chosen = sub->get_name(); });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (!chosen && !flags.config) {
            std::cerr << "error: name an experiment or pass --config\n" << run->help();
            return 1;
        }
        const auto cfg = modalqc::cli::validate_config(merge(flags, chosen));
        const char *no_color = std::getenv("NO_COLOR");
        const bool styled = (no_color == nullptr || *no_color == '\0') && isatty(STDOUT_FILENO) != 0;
        return modalqc::cli::run_experiment(cfg, std::cout, std::cerr, styled);
    } catch (const modalqc::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == modalqc::ErrorCode::IoError ? 2 : 1;
    }
}
