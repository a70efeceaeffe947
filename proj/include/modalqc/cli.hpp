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

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "modalqc/classical_twin.hpp"
#include "modalqc/decoder.hpp"
#include "modalqc/format.hpp"
#include "modalqc/processor.hpp"
#include "modalqc/random.hpp"
#include "modalqc/register.hpp"
#include "modalqc/resources.hpp"

namespace modalqc::cli {

enum class Experiment { Grover, ReadoutDemo, EquivalenceCheck, ResourceReport };
enum class OutputFormat { Table, Csv, Json };

inline constexpr std::string_view to_string(Experiment e) noexcept {
    switch (e) {
    case Experiment::Grover: return "grover";
    case Experiment::ReadoutDemo: return "readout_demo";
    case Experiment::EquivalenceCheck: return "equivalence_check";
    case Experiment::ResourceReport: return "resource_report";
    }
    return "";
}

inline constexpr std::string_view to_string(OutputFormat f) noexcept {
    switch (f) {
    case OutputFormat::Table: return "table";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    }
    return "";
}

/// Fully validated experiment description. Field names match the JSON config
/// keys one to one.
struct ExperimentConfig {
    Experiment experiment = Experiment::Grover;
    std::size_t n_modes = 0;
    std::optional<std::size_t> marked_index;
    std::optional<std::size_t> n_iterations;
    std::uint64_t n_shots = 10000;
    std::uint64_t seed = 0;
    OutputFormat output_format = OutputFormat::Table;
    std::optional<std::string> output_path;
    // readout_demo input: exactly one of the two.
    std::optional<std::size_t> basis_state;
    std::optional<std::vector<Complex>> amplitudes;
};

namespace detail {

[[noreturn]] inline void invalid(const std::string &field, const std::string &why) {
    throw Error(ErrorCode::ValidationError, "field '" + field + "': " + why);
}

inline std::uint64_t get_unsigned(const nlohmann::json &j, const std::string &field) {
    const auto &v = j.at(field);
    if (v.is_number_unsigned()) {
        return v.get<std::uint64_t>();
    }
    if (v.is_number_integer()) {
        const auto signed_value = v.get<std::int64_t>();
        if (signed_value < 0) {
            invalid(field, "must be non-negative, got " + v.dump());
        }
        return static_cast<std::uint64_t>(signed_value);
    }
    invalid(field, "expected a non-negative integer, got " + v.dump());
}

inline std::string get_string(const nlohmann::json &j, const std::string &field) {
    const auto &v = j.at(field);
    if (!v.is_string()) {
        invalid(field, "expected a string, got " + v.dump());
    }
    return v.get<std::string>();
}

inline Complex parse_amplitude(const nlohmann::json &v, std::size_t index) {
    const std::string field = "amplitudes[" + std::to_string(index) + "]";
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    invalid(field, "expected a number or a [re, im] pair, got " + v.dump());
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace detail

/// Parses JSON config text into a raw object; syntax errors carry line and
/// column.
inline nlohmann::json parse_config_text(std::string_view text) {
    try {
        auto j = nlohmann::json::parse(text);
        if (!j.is_object()) {
            throw Error(ErrorCode::ParseError, "config must be a JSON object");
        }
        return j;
    } catch (const nlohmann::json::parse_error &e) {
        // e.byte is one past the offending character.
        const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                               ": " + e.what());
    }
}

inline nlohmann::json read_config_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config_text(buf.str());
    } catch (const Error &e) {
        throw Error(e.code(), path + ": " + std::string(e.what()));
    }
}

/// Validates a raw config object (file contents with flag overrides already
/// merged in) and applies defaults.
inline ExperimentConfig validate_config(const nlohmann::json &raw) {
    static const std::vector<std::string> known = {"experiment", "n_modes",       "marked_index", "n_iterations",
                                                   "n_shots",    "seed",          "output_format", "output_path",
                                                   "basis_state", "amplitudes"};
    for (const auto &[key, value] : raw.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            detail::invalid(key, "unknown field");
        }
    }

    ExperimentConfig cfg;
    if (!raw.contains("experiment")) {
        detail::invalid("experiment", "missing");
    }
    const std::string experiment = detail::get_string(raw, "experiment");
    if (experiment == "grover") {
        cfg.experiment = Experiment::Grover;
    } else if (experiment == "readout_demo") {
        cfg.experiment = Experiment::ReadoutDemo;
    } else if (experiment == "equivalence_check") {
        cfg.experiment = Experiment::EquivalenceCheck;
    } else if (experiment == "resource_report") {
        cfg.experiment = Experiment::ResourceReport;
    } else {
        detail::invalid("experiment", "unknown experiment '" + experiment +
                                          "' (grover, readout_demo, equivalence_check, resource_report)");
    }

    if (raw.contains("amplitudes")) {
        const auto &a = raw.at("amplitudes");
        if (!a.is_array()) {
            detail::invalid("amplitudes", "expected an array");
        }
        std::vector<Complex> amps;
        for (std::size_t i = 0; i < a.size(); ++i) {
            amps.push_back(detail::parse_amplitude(a[i], i));
        }
        cfg.amplitudes = std::move(amps);
    }

    if (raw.contains("n_modes")) {
        cfg.n_modes = detail::get_unsigned(raw, "n_modes");
    } else if (cfg.amplitudes) {
        cfg.n_modes = cfg.amplitudes->size();
    } else {
        detail::invalid("n_modes", "missing");
    }
    if (cfg.n_modes < 2) {
        detail::invalid("n_modes", "must be at least 2, got " + std::to_string(cfg.n_modes));
    }
    // Dense N x N unitaries; keep the memory footprint bounded.
    if (cfg.n_modes > 4096) {
        detail::invalid("n_modes", "must be at most 4096, got " + std::to_string(cfg.n_modes));
    }

    if (raw.contains("marked_index")) {
        cfg.marked_index = detail::get_unsigned(raw, "marked_index");
        if (*cfg.marked_index >= cfg.n_modes) {
            detail::invalid("marked_index", "must be below n_modes (" + std::to_string(cfg.n_modes) + ")");
        }
    }
    if (raw.contains("n_iterations")) {
        cfg.n_iterations = detail::get_unsigned(raw, "n_iterations");
    }
    if (raw.contains("n_shots")) {
        cfg.n_shots = detail::get_unsigned(raw, "n_shots");
        if (cfg.n_shots < 1) {
            detail::invalid("n_shots", "must be at least 1");
        }
    }
    if (raw.contains("seed")) {
        cfg.seed = detail::get_unsigned(raw, "seed");
    }
    if (raw.contains("output_format")) {
        const std::string f = detail::get_string(raw, "output_format");
        if (f == "table") {
            cfg.output_format = OutputFormat::Table;
        } else if (f == "csv") {
            cfg.output_format = OutputFormat::Csv;
        } else if (f == "json") {
            cfg.output_format = OutputFormat::Json;
        } else {
            detail::invalid("output_format", "expected table, csv or json, got '" + f + "'");
        }
    }
    if (raw.contains("output_path")) {
        cfg.output_path = detail::get_string(raw, "output_path");
    }
    if (raw.contains("basis_state")) {
        cfg.basis_state = detail::get_unsigned(raw, "basis_state");
        if (*cfg.basis_state >= cfg.n_modes) {
            detail::invalid("basis_state", "must be below n_modes (" + std::to_string(cfg.n_modes) + ")");
        }
    }

    switch (cfg.experiment) {
    case Experiment::Grover:
        if (!cfg.marked_index) {
            detail::invalid("marked_index", "required by the grover experiment");
        }
        if (!cfg.n_iterations) {
            cfg.n_iterations = default_grover_iterations(cfg.n_modes);
        }
        break;
    case Experiment::ReadoutDemo:
        if (cfg.basis_state.has_value() == cfg.amplitudes.has_value()) {
            detail::invalid("basis_state", "readout_demo needs exactly one of basis_state or amplitudes");
        }
        if (cfg.amplitudes && cfg.amplitudes->size() != cfg.n_modes) {
            detail::invalid("amplitudes", "length " + std::to_string(cfg.amplitudes->size()) +
                                              " does not match n_modes " + std::to_string(cfg.n_modes));
        }
        break;
    case Experiment::ResourceReport:
        if (!cfg.marked_index) {
            cfg.marked_index = 0;
        }
        if (!cfg.n_iterations) {
            cfg.n_iterations = default_grover_iterations(cfg.n_modes);
        }
        break;
    case Experiment::EquivalenceCheck:
        break;
    }
    return cfg;
}

namespace detail {

inline nlohmann::ordered_json histogram_json(const Histogram &h) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t mu = 0; mu < h.counts.size(); ++mu) {
        nlohmann::ordered_json row;
        row["mode_index"] = mu;
        row["count"] = h.counts[mu];
        row["frequency"] = h.frequency(mu);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_histogram_table(std::ostream &os, const Histogram &h, bool styled) {
    TextTable t({"mode_index", "count", "frequency"});
    for (std::size_t mu = 0; mu < h.counts.size(); ++mu) {
        t.add_row({std::to_string(mu), std::to_string(h.counts[mu]), format_real(h.frequency(mu))});
    }
    t.write(os, styled);
}

inline void write_key_values(std::ostream &os, const std::vector<std::pair<std::string, std::string>> &kv,
                             OutputFormat format, bool styled) {
    if (format == OutputFormat::Csv) {
        os << "quantity,value\n";
        for (const auto &[k, v] : kv) {
            os << k << ',' << v << '\n';
        }
        return;
    }
    TextTable t({"quantity", "value"});
    for (const auto &[k, v] : kv) {
        t.add_row({k, v});
    }
    t.write(os, styled);
}

inline void run_grover(const ExperimentConfig &cfg, std::ostream &os, bool styled) {
    const GroverPlan plan(cfg.n_modes, *cfg.marked_index, cfg.n_iterations);
    const GroverResult result = grover_run(plan);
    const double success = result.success_probability(plan.marked_index());
    const SingleParticleState readout_state = result.state.padded_to_power_of_two();
    const Histogram hist = repeated_readout(readout_state, cfg.n_shots, cfg.seed);
    const ComparisonReport report = compare_with_classical(audit_grover(plan, cfg.n_shots));

    switch (cfg.output_format) {
    case OutputFormat::Csv:
        hist.write_csv(os);
        break;
    case OutputFormat::Json: {
        nlohmann::ordered_json j;
        j["experiment"] = "grover";
        j["n_modes"] = cfg.n_modes;
        j["n_padded_modes"] = readout_state.n_modes() - cfg.n_modes;
        j["marked_index"] = plan.marked_index();
        j["n_iterations"] = plan.n_iterations();
        j["n_shots"] = cfg.n_shots;
        j["seed"] = cfg.seed;
        j["success_probability"] = success;
        j["report"] = report.to_json();
        j["histogram"] = histogram_json(hist);
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Table:
        write_key_values(os,
                         {{"experiment", "grover"},
                          {"n_modes", std::to_string(cfg.n_modes)},
                          {"marked_index", std::to_string(plan.marked_index())},
                          {"n_iterations", std::to_string(plan.n_iterations())},
                          {"n_shots", std::to_string(cfg.n_shots)},
                          {"seed", std::to_string(cfg.seed)},
                          {"success_probability", format_real(success)}},
                         cfg.output_format, styled);
        os << '\n';
        write_histogram_table(os, hist, styled);
        os << '\n';
        report.write_table(os, styled);
        break;
    }
}

inline SingleParticleState demo_state(const ExperimentConfig &cfg) {
    if (cfg.basis_state) {
        return basis_state(cfg.n_modes, *cfg.basis_state);
    }
    return new_state(std::span<const Complex>(*cfg.amplitudes));
}

inline void run_readout_demo(const ExperimentConfig &cfg, std::ostream &os, bool styled) {
    const SingleParticleState state = demo_state(cfg).padded_to_power_of_two();
    const ReadoutRecord shot = sample_readout(state, cfg.seed, 0);
    const PollResult poll = binary_search_poll(shot.bits);
    const Histogram hist = repeated_readout(state, cfg.n_shots, cfg.seed);
    const ResourceLedger ledger(cfg.n_modes, 0, cfg.n_shots);

    switch (cfg.output_format) {
    case OutputFormat::Csv:
        hist.write_csv(os);
        break;
    case OutputFormat::Json: {
        nlohmann::ordered_json j;
        j["experiment"] = "readout_demo";
        j["n_modes"] = cfg.n_modes;
        j["n_padded_modes"] = ledger.n_padded_modes();
        j["n_shots"] = cfg.n_shots;
        j["seed"] = cfg.seed;
        j["bits"] = shot.bit_string();
        j["decoded_mode"] = poll.mode_index;
        j["steps"] = poll.steps;
        j["n_detectors"] = ledger.n_detectors();
        j["histogram"] = histogram_json(hist);
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Table:
        write_key_values(os,
                         {{"experiment", "readout_demo"},
                          {"n_modes", std::to_string(cfg.n_modes)},
                          {"n_padded_modes", std::to_string(ledger.n_padded_modes())},
                          {"n_detectors", std::to_string(ledger.n_detectors())},
                          {"bits", shot.bit_string()},
                          {"decoded_mode", std::to_string(poll.mode_index)},
                          {"steps", std::to_string(poll.steps)}},
                         cfg.output_format, styled);
        os << '\n';
        write_histogram_table(os, hist, styled);
        break;
    }
}

inline void run_equivalence(const ExperimentConfig &cfg, std::ostream &os, bool styled) {
    SplitMix64 rng(cfg.seed);
    const SingleParticleState state = random_state(cfg.n_modes, rng);
    const UnitaryOp u = random_unitary(cfg.n_modes, rng);
    const ModeBasis basis = fourier_mode_basis(cfg.n_modes, cfg.n_modes);
    const double diff = equivalence_check(state, u, basis);
    const double trace = quantum_correlation(apply_unitary(state, u), basis).trace().real();
    const bool within = diff <= kNormTolerance;

    if (cfg.output_format == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["experiment"] = "equivalence_check";
        j["n_modes"] = cfg.n_modes;
        j["seed"] = cfg.seed;
        j["max_abs_difference"] = diff;
        j["quantum_trace"] = trace;
        j["tolerance"] = kNormTolerance;
        j["equivalent"] = within;
        os << j.dump(2) << '\n';
        return;
    }
    write_key_values(os,
                     {{"experiment", "equivalence_check"},
                      {"n_modes", std::to_string(cfg.n_modes)},
                      {"seed", std::to_string(cfg.seed)},
                      {"max_abs_difference", format_real(diff)},
                      {"quantum_trace", format_real(trace)},
                      {"tolerance", format_real(kNormTolerance)},
                      {"equivalent", within ? "yes" : "no"}},
                     cfg.output_format, styled);
}

inline void run_resource_report(const ExperimentConfig &cfg, std::ostream &os, bool styled) {
    const GroverPlan plan(cfg.n_modes, *cfg.marked_index, cfg.n_iterations);
    const ResourceLedger ledger = audit_grover(plan, cfg.n_shots);
    const ComparisonReport report = compare_with_classical(ledger);
    switch (cfg.output_format) {
    case OutputFormat::Json:
        os << report.to_json().dump(2) << '\n';
        break;
    case OutputFormat::Csv: {
        const auto fields = report.to_json();
        os << "quantity,value\n";
        for (const auto &[k, v] : fields.items()) {
            os << k << ',' << v.dump() << '\n';
        }
        os << "n_padded_modes," << ledger.n_padded_modes() << '\n';
        os << "n_shots," << ledger.n_shots() << '\n';
        break;
    }
    case OutputFormat::Table:
        report.write_table(os, styled);
        break;
    }
}

} // namespace detail

/// Runs one experiment, writing results to `output_path` or `out`.
/// Diagnostics go to `err`. Returns 0 on success, 1 on a domain error and
/// 2 on an I/O error.
inline int run_experiment(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err, bool styled = false) {
    try {
        std::ostringstream buffer;
        const bool to_file = cfg.output_path.has_value();
        const bool style = styled && !to_file && cfg.output_format == OutputFormat::Table;
        switch (cfg.experiment) {
        case Experiment::Grover: detail::run_grover(cfg, buffer, style); break;
        case Experiment::ReadoutDemo: detail::run_readout_demo(cfg, buffer, style); break;
        case Experiment::EquivalenceCheck: detail::run_equivalence(cfg, buffer, style); break;
        case Experiment::ResourceReport: detail::run_resource_report(cfg, buffer, style); break;
        }
        if (to_file) {
            std::ofstream file(*cfg.output_path, std::ios::binary | std::ios::trunc);
            if (!file) {
                throw Error(ErrorCode::IoError, "cannot open output file '" + *cfg.output_path + "'");
            }
            file << buffer.str();
            if (!file.flush()) {
                throw Error(ErrorCode::IoError, "failed writing '" + *cfg.output_path + "'");
            }
        } else {
            out << buffer.str();
        }
        return 0;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::IoError ? 2 : 1;
    }
}

} // namespace modalqc::cli
