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

#include "modalqc/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

using namespace modalqc;
using namespace modalqc::cli;
using nlohmann::json;

namespace {

ErrorCode code_of(auto &&fn, std::string *message = nullptr) {
    try {
        fn();
    } catch (const Error &e) {
        if (message) *message = e.what();
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::IoError;
}

struct Run {
    int status = 0;
    std::string out;
    std::string err;
};

Run run_config(const json &raw) {
    std::ostringstream out, err;
    Run r;
    r.status = run_experiment(validate_config(raw), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct Proc {
    int exit_code = -1;
    std::string out;
};

Proc run_binary(const std::string &args) {
    const std::string cmd = std::string(MODALQC_CLI_PATH) + " " + args + " 2>/dev/null";
    Proc p;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return p;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) p.out.append(buf, n);
    const int status = pclose(pipe);
    p.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return p;
}

/// Second whitespace-separated token of the first line starting with `key`.
std::string table_value(const std::string &text, const std::string &key) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string first, second;
        if (fields >> first >> second && first == key) return second;
    }
    return {};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "modalqc_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(CliConfig, grover_defaults_iterations) {
    const auto cfg = validate_config(json{{"experiment", "grover"}, {"n_modes", 16}, {"marked_index", 3}});
    EXPECT_EQ(cfg.experiment, Experiment::Grover);
    EXPECT_EQ(cfg.n_iterations, 3u);
    EXPECT_EQ(cfg.n_shots, 10000u);
    EXPECT_EQ(cfg.seed, 0u);
    EXPECT_EQ(cfg.output_format, OutputFormat::Table);
    EXPECT_FALSE(cfg.output_path.has_value());
}

TEST(CliConfig, validation_errors_name_the_field) {
    std::string msg;
    EXPECT_EQ(code_of([] { validate_config(json{{"experiment", "grover"}, {"n_modes", 16}}); }, &msg),
              ErrorCode::ValidationError);
    EXPECT_NE(msg.find("marked_index"), std::string::npos) << msg;

    EXPECT_EQ(code_of([] { validate_config(json{{"experiment", "resource_report"}, {"n_modes", 1}}); }, &msg),
              ErrorCode::ValidationError);
    EXPECT_NE(msg.find("n_modes"), std::string::npos) << msg;

    EXPECT_EQ(code_of([] { validate_config(json{{"experiment", "warp"}, {"n_modes", 4}}); }, &msg),
              ErrorCode::ValidationError);
    EXPECT_NE(msg.find("experiment"), std::string::npos);

    EXPECT_EQ(code_of([] { validate_config(json{{"experiment", "grover"}, {"n_modes", 4}, {"marked_index", 4}}); },
                      &msg),
              ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { validate_config(json{{"experiment", "grover"}, {"n_modes", -4}, {"marked_index", 0}}); },
                      &msg),
              ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { validate_config(json{{"experiment", "equivalence_check"}, {"n_modes", 4}, {"colour", 1}}); },
                      &msg),
              ErrorCode::ValidationError);
    EXPECT_NE(msg.find("colour"), std::string::npos);
    EXPECT_EQ(code_of([] { validate_config(json{{"experiment", "readout_demo"}, {"n_modes", 4}}); }, &msg),
              ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] {
                  validate_config(json{{"experiment", "readout_demo"}, {"n_modes", 4}, {"amplitudes", {1, 0}}});
              }),
              ErrorCode::ValidationError);
}

TEST(CliConfig, parse_error_reports_line) {
    std::string msg;
    EXPECT_EQ(code_of([] { parse_config_text("{\n  \"n_modes\": 4,\n  oops\n}"); }, &msg), ErrorCode::ParseError);
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_EQ(code_of([] { parse_config_text("[1, 2]"); }), ErrorCode::ParseError);
}

TEST(CliConfig, amplitudes_accept_numbers_and_pairs) {
    const auto cfg = validate_config(json::parse(R"({"experiment":"readout_demo","amplitudes":[1,[0,1],0,0]})"));
    EXPECT_EQ(cfg.n_modes, 4u);
    ASSERT_TRUE(cfg.amplitudes.has_value());
    EXPECT_EQ((*cfg.amplitudes)[1], Complex(0, 1));
}

TEST(CliRun, grover_n4_json_report) {
    const auto r = run_config(json{{"experiment", "grover"},
                                   {"n_modes", 4},
                                   {"marked_index", 2},
                                   {"n_iterations", 1},
                                   {"n_shots", 100000},
                                   {"seed", 7},
                                   {"output_format", "json"}});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j.at("success_probability").get<double>(), 1.0, 1e-12);
    EXPECT_EQ(j.at("report").at("oracle_queries"), 1);
    EXPECT_EQ(j.at("report").at("n_detectors"), 2);
    EXPECT_EQ(j.at("histogram").at(2).at("count"), 100000);
    EXPECT_EQ(j.at("histogram").at(2).at("frequency"), 1.0);
}

TEST(CliRun, grover_csv_is_histogram) {
    const auto r = run_config(json{{"experiment", "grover"},
                                   {"n_modes", 4},
                                   {"marked_index", 2},
                                   {"n_iterations", 1},
                                   {"n_shots", 10},
                                   {"output_format", "csv"}});
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "mode_index,count,frequency\n0,0,0\n1,0,0\n2,10,1\n3,0,0\n");
}

TEST(CliRun, grover_pads_odd_registers) {
    const auto r = run_config(json{{"experiment", "grover"},
                                   {"n_modes", 5},
                                   {"marked_index", 4},
                                   {"n_shots", 1000},
                                   {"output_format", "json"}});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("n_padded_modes"), 3);
    EXPECT_EQ(j.at("histogram").size(), 8u);
    for (int mu = 5; mu < 8; ++mu) EXPECT_EQ(j.at("histogram").at(mu).at("count"), 0);
}

TEST(CliRun, equivalence_check_n8) {
    const auto r = run_config(json{{"experiment", "equivalence_check"}, {"n_modes", 8}, {"output_format", "json"}});
    ASSERT_EQ(r.status, 0);
    const auto j = json::parse(r.out);
    EXPECT_LE(j.at("max_abs_difference").get<double>(), 1e-12);
    EXPECT_EQ(j.at("equivalent"), true);
}

TEST(CliRun, readout_demo_basis_five) {
    const auto r = run_config(json{{"experiment", "readout_demo"}, {"n_modes", 8}, {"basis_state", 5}});
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(table_value(r.out, "bits"), "101") << r.out;
    EXPECT_EQ(table_value(r.out, "decoded_mode"), "5") << r.out;
    EXPECT_EQ(table_value(r.out, "steps"), "3") << r.out;

    const auto j = json::parse(
        run_config(json{{"experiment", "readout_demo"}, {"n_modes", 8}, {"basis_state", 5}, {"output_format", "json"}})
            .out);
    EXPECT_EQ(j.at("bits"), "101");
    EXPECT_EQ(j.at("decoded_mode"), 5);
    EXPECT_EQ(j.at("steps"), 3);
}

TEST(CliRun, resource_report_json_fields) {
    const auto r = run_config(json{{"experiment", "resource_report"}, {"n_modes", 1024}, {"output_format", "json"}});
    ASSERT_EQ(r.status, 0);
    const auto j = json::parse(r.out);
    for (const char *key : {"n_modes", "n_detectors", "readout_steps", "oracle_queries", "classical_unsorted_queries",
                            "readout_floor"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j.at("oracle_queries"), 25);
    EXPECT_EQ(j.at("readout_floor"), 10);
}

TEST(CliRun, resource_report_csv_records_padding) {
    const auto r = run_config(json{{"experiment", "resource_report"}, {"n_modes", 1000}, {"output_format", "csv"}});
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("quantity,value\nn_modes,1000\nn_detectors,10\n", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("n_padded_modes,24\n"), std::string::npos) << r.out;
}

TEST(CliRun, identical_config_gives_identical_bytes) {
    const json raw{{"experiment", "readout_demo"},
                   {"n_modes", 16},
                   {"amplitudes", json::array({1, 2, json::array({0, 3}), 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16})},
                   {"n_shots", 20000},
                   {"seed", 99}};
    for (const char *fmt : {"table", "csv", "json"}) {
        json r = raw;
        r["output_format"] = fmt;
        EXPECT_EQ(run_config(r).out, run_config(r).out) << fmt;
    }
}

TEST(CliRun, unwritable_output_is_io_error) {
    const auto r = run_config(json{{"experiment", "equivalence_check"},
                                   {"n_modes", 4},
                                   {"output_path", "/nonexistent-dir/for/sure/out.txt"}});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("IoError"), std::string::npos);
}

TEST(CliBinary, grover_flags_and_exit_code) {
    const auto p = run_binary("run grover --n-modes 16 --marked 3 --shots 2000 --format json");
    ASSERT_EQ(p.exit_code, 0);
    const auto j = json::parse(p.out);
    EXPECT_EQ(j.at("n_iterations"), 3);
    EXPECT_EQ(j.at("report").at("oracle_queries"), 3);
}

TEST(CliBinary, validation_failure_is_nonzero) {
    EXPECT_NE(run_binary("run grover --n-modes 16").exit_code, 0);
    EXPECT_NE(run_binary("run grover --n-modes 1 --marked 0").exit_code, 0);
    EXPECT_NE(run_binary("run").exit_code, 0);
}

TEST(CliBinary, config_file_with_flag_override) {
    const auto cfg = scratch("grover.json");
    std::ofstream(cfg) << R"({"experiment": "grover", "n_modes": 8, "marked_index": 1, "n_shots": 500,
                              "output_format": "json"})";
    const auto base = json::parse(run_binary("run --config " + cfg.string()).out);
    EXPECT_EQ(base.at("n_modes"), 8);
    const auto over = json::parse(run_binary("run --config " + cfg.string() + " --n-modes 32 --marked 30").out);
    EXPECT_EQ(over.at("n_modes"), 32);
    EXPECT_EQ(over.at("marked_index"), 30);

    const auto broken = scratch("broken.json");
    std::ofstream(broken) << "{\n\"experiment\": \"grover\",,\n}";
    EXPECT_EQ(run_binary("run --config " + broken.string()).exit_code, 1);
}

TEST(CliBinary, output_files_are_byte_identical) {
    const auto a = scratch("a.csv"), b = scratch("b.csv");
    const std::string args = "run readout_demo --n-modes 8 --amplitudes '[1,1,1,[0,1],1,1,1,1]' --shots 30000 --seed 5 "
                             "--format csv --output ";
    ASSERT_EQ(run_binary(args + a.string()).exit_code, 0);
    ASSERT_EQ(run_binary(args + b.string()).exit_code, 0);
    const std::string ca = slurp(a);
    EXPECT_FALSE(ca.empty());
    EXPECT_EQ(ca, slurp(b));
    EXPECT_EQ(ca.find('\r'), std::string::npos);
}

TEST(CliBinary, help_per_subcommand) {
    const auto p = run_binary("run grover --help");
    EXPECT_EQ(p.exit_code, 0);
    EXPECT_NE(p.out.find("--marked"), std::string::npos);
}
