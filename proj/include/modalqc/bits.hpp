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

#include <bit>
#include <cstddef>

namespace modalqc {

constexpr bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

/// Smallest L with 2^L >= n; 0 for n <= 1.
constexpr std::size_t ceil_log2(std::size_t n) noexcept {
    return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

constexpr std::size_t next_power_of_two(std::size_t n) noexcept {
    return n <= 1 ? 1 : std::bit_ceil(n);
}

/// Bit `bit_index` of `mode` for an L-bit label, counting bit 0 as the most
/// significant one.
constexpr bool label_bit(std::size_t mode, std::size_t bit_index, std::size_t n_bits) noexcept {
    return ((mode >> (n_bits - 1 - bit_index)) & 1U) != 0;
}

} // namespace modalqc
