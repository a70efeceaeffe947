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
#include <array>
#include <charconv>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace modalqc {

/// Shortest decimal string that round-trips to the same double. Independent
/// of locale, so exported files are byte-stable.
inline std::string format_real(double value) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

/// Plain-text table. Numeric cells are right-aligned within their column,
/// everything else left-aligned.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) {
        row.resize(header_.size());
        rows_.push_back(std::move(row));
    }

    void write(std::ostream &os, bool bold_header = false) const {
        const std::size_t n = header_.size();
        std::vector<std::size_t> width(n);
        std::vector<bool> numeric_column(n, !rows_.empty());
        for (std::size_t c = 0; c < n; ++c) {
            width[c] = header_[c].size();
            for (const auto &row : rows_) {
                width[c] = std::max(width[c], row[c].size());
                numeric_column[c] = numeric_column[c] && is_number(row[c]);
            }
        }
        auto emit = [&](const std::vector<std::string> &cells, bool header) {
            std::string line;
            for (std::size_t c = 0; c < n; ++c) {
                const std::string pad(width[c] - cells[c].size(), ' ');
                if (c > 0) {
                    line += "  ";
                }
                const bool right = header ? numeric_column[c] : is_number(cells[c]);
                line += right ? pad + cells[c] : cells[c] + pad;
            }
            line.erase(line.find_last_not_of(' ') + 1);
            if (header && bold_header) {
                os << "\x1b[1m" << line << "\x1b[0m\n";
            } else {
                os << line << '\n';
            }
        };
        emit(header_, true);
        for (const auto &row : rows_) {
            emit(row, false);
        }
    }

    static bool is_number(const std::string &cell) {
        if (cell.empty()) {
            return false;
        }
        double v = 0.0;
        const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        return ec == std::errc() && end == cell.data() + cell.size();
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace modalqc
