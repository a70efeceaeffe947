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

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "modalqc/bits.hpp"
#include "modalqc/format.hpp"
#include "modalqc/processor.hpp"

namespace modalqc {

/// Resource tally of one experiment. The mode count stands in for the
/// spatio-temporal volume the register and its readout occupy; padding modes
/// are the zero-amplitude modes added to reach a power of two for binary
/// readout.
class ResourceLedger {
public:
    ResourceLedger(std::size_t n_modes, std::uint64_t oracle_queries, std::uint64_t n_shots)
        : n_modes_(n_modes), n_padded_modes_(next_power_of_two(n_modes) - n_modes),
          n_detectors_(ceil_log2(n_modes)), oracle_queries_(oracle_queries), n_shots_(n_shots) {
        if (n_modes < 2) {
            throw Error(ErrorCode::TooSmall, "a register needs at least 2 modes");
        }
        if (n_shots < 1) {
            throw Error(ErrorCode::TooSmall, "a ledger needs at least one shot");
        }
    }

    /// Logical register size, before padding.
    [[nodiscard]] std::size_t n_modes() const noexcept { return n_modes_; }
    [[nodiscard]] std::size_t n_padded_modes() const noexcept { return n_padded_modes_; }
    [[nodiscard]] std::size_t total_modes() const noexcept { return n_modes_ + n_padded_modes_; }
    [[nodiscard]] std::size_t n_detectors() const noexcept { return n_detectors_; }
    [[nodiscard]] std::size_t readout_steps_per_shot() const noexcept { return n_detectors_; }
    [[nodiscard]] std::size_t classical_search_steps() const noexcept { return n_detectors_; }
    [[nodiscard]] std::uint64_t oracle_queries() const noexcept { return oracle_queries_; }
    [[nodiscard]] std::uint64_t n_shots() const noexcept { return n_shots_; }

private:
    std::size_t n_modes_;
    std::size_t n_padded_modes_;
    std::size_t n_detectors_;
    std::uint64_t oracle_queries_;
    std::uint64_t n_shots_;
};

inline ResourceLedger audit_grover(const GroverPlan &plan, std::uint64_t n_shots) {
    return ResourceLedger(plan.n_modes(), plan.query_count(), n_shots);
}

/// Side-by-side cost of locating one item among N:
///   classical_unsorted_queries  oracle queries of a classical scan, N
///   oracle_queries              Grover queries from the ledger
///   readout_floor               log2 N polling steps, shared by the quantum
///                               readout and a classical sorted search
/// No speedup is claimed; `no_speedup_without_encoded_oracle` is set when
/// queries plus readout are not below the sorted classical search.
struct ComparisonReport {
    std::size_t n_modes = 0;
    std::size_t n_detectors = 0;
    std::size_t readout_steps = 0;
    std::uint64_t oracle_queries = 0;
    std::uint64_t classical_unsorted_queries = 0;
    std::size_t readout_floor = 0;
    std::size_t quantum_readout_floor = 0;
    std::size_t classical_sorted_steps = 0;
    std::uint64_t quantum_total_steps = 0;
    bool no_speedup_without_encoded_oracle = false;

    [[nodiscard]] nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["n_modes"] = n_modes;
        j["n_detectors"] = n_detectors;
        j["readout_steps"] = readout_steps;
        j["oracle_queries"] = oracle_queries;
        j["classical_unsorted_queries"] = classical_unsorted_queries;
        j["readout_floor"] = readout_floor;
        j["quantum_readout_floor"] = quantum_readout_floor;
        j["classical_sorted_steps"] = classical_sorted_steps;
        j["quantum_total_steps"] = quantum_total_steps;
        j["no_speedup_without_encoded_oracle"] = no_speedup_without_encoded_oracle;
        return j;
    }

    void write_table(std::ostream &os, bool bold_header = false) const {
        TextTable t({"quantity", "value"});
        t.add_row({"n_modes", std::to_string(n_modes)});
        t.add_row({"n_detectors", std::to_string(n_detectors)});
        t.add_row({"readout_steps", std::to_string(readout_steps)});
        t.add_row({"oracle_queries", std::to_string(oracle_queries)});
        t.add_row({"classical_unsorted_queries", std::to_string(classical_unsorted_queries)});
        t.add_row({"readout_floor", std::to_string(readout_floor)});
        t.add_row({"quantum_readout_floor", std::to_string(quantum_readout_floor)});
        t.add_row({"classical_sorted_steps", std::to_string(classical_sorted_steps)});
        t.add_row({"quantum_total_steps", std::to_string(quantum_total_steps)});
        t.add_row({"no_speedup_without_encoded_oracle", no_speedup_without_encoded_oracle ? "yes" : "no"});
        t.write(os, bold_header);
    }
};

inline ComparisonReport compare_with_classical(const ResourceLedger &ledger) {
    ComparisonReport r;
    r.n_modes = ledger.n_modes();
    r.n_detectors = ledger.n_detectors();
    r.readout_steps = ledger.readout_steps_per_shot();
    r.oracle_queries = ledger.oracle_queries();
    r.classical_unsorted_queries = ledger.n_modes();
    r.quantum_readout_floor = ledger.readout_steps_per_shot();
    r.classical_sorted_steps = ceil_log2(ledger.n_modes());
    r.readout_floor = r.quantum_readout_floor;
    r.quantum_total_steps = r.oracle_queries + r.readout_steps;
    r.no_speedup_without_encoded_oracle = r.quantum_total_steps >= r.classical_sorted_steps;
    return r;
}

} // namespace modalqc
