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

#include <stdexcept>
#include <string>
#include <string_view>

namespace modalqc {

enum class ErrorCode {
    ZeroNorm,
    NonFinite,
    TooSmall,
    IndexOutOfRange,
    GridTooSmall,
    DimensionMismatch,
    NotUnitary,
    BadOccupation,
    NotPowerOfTwo,
    BitOutOfRange,
    EmptyBits,
    InvalidPlan,
    ParseError,
    ValidationError,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::BadOccupation: return "BadOccupation";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::BitOutOfRange: return "BitOutOfRange";
    case ErrorCode::EmptyBits: return "EmptyBits";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure in the library is reported through this exception type; the
/// code identifies the failed precondition.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace modalqc
