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
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "modalqc/bits.hpp"
#include "modalqc/format.hpp"
#include "modalqc/random.hpp"
#include "modalqc/register.hpp"

namespace modalqc {

/// Linear filter selecting detector mode mu. The general spatio-temporal
/// kernel reduces, for a detector matched to one mode of the propagated
/// basis, to projection onto that mode; only this case is modelled.
struct ModeFilter {
    std::size_t target_mode = 0;
    std::size_t n_modes = 0;

    ModeFilter(std::size_t target, std::size_t n) : target_mode(target), n_modes(n) {
        detail::check_index(target, n, "filter mode");
    }
};

/// Filtered register amplitude for the detector mode.
inline Complex mode_filter(const SingleParticleState &state, const ModeFilter &filter) {
    if (state.n_modes() != filter.n_modes) {
        throw Error(ErrorCode::DimensionMismatch, "filter and state differ in mode count");
    }
    return state[filter.target_mode];
}

/// <N_mu> = |psi_mu|^2.
inline double mode_probability(const SingleParticleState &state, std::size_t mode_index) {
    detail::check_index(mode_index, state.n_modes(), "mode index");
    return std::norm(mode_filter(state, ModeFilter(mode_index, state.n_modes())));
}

/// Expectation of the occupation projector delta(N_mu - n) for one particle:
/// n = 0 gives 1 - <N_mu>, n = 1 gives <N_mu>.
inline double projector_expectation(const SingleParticleState &state, std::size_t mode_index, int occupation) {
    if (occupation != 0 && occupation != 1) {
        throw Error(ErrorCode::BadOccupation, "a single particle occupies a mode 0 or 1 times, not " +
                                                  std::to_string(occupation));
    }
    const double p = mode_probability(state, mode_index);
    return occupation == 1 ? p : 1.0 - p;
}

/// Modes sharing a set bit at position `bit_index` of their binary label,
/// bit 0 being the most significant. Summing their number operators gives
/// one physical counter per bit.
class DetectorGroup {
public:
    [[nodiscard]] std::size_t bit_index() const noexcept { return bit_index_; }
    [[nodiscard]] std::size_t n_modes() const noexcept { return n_modes_; }
    [[nodiscard]] const std::vector<std::size_t> &member_modes() const noexcept { return members_; }

    [[nodiscard]] std::vector<std::size_t> complement_modes() const {
        std::vector<std::size_t> out;
        out.reserve(n_modes_ - members_.size());
        for (std::size_t mu = 0; mu < n_modes_; ++mu) {
            if (!std::binary_search(members_.begin(), members_.end(), mu)) {
                out.push_back(mu);
            }
        }
        return out;
    }

    [[nodiscard]] bool contains(std::size_t mode) const {
        return std::binary_search(members_.begin(), members_.end(), mode);
    }

private:
    DetectorGroup(std::size_t bit_index, std::size_t n_modes, std::vector<std::size_t> members)
        : bit_index_(bit_index), n_modes_(n_modes), members_(std::move(members)) {}

    friend DetectorGroup detector_group(std::size_t n_modes, std::size_t bit_index);

    std::size_t bit_index_;
    std::size_t n_modes_;
    std::vector<std::size_t> members_;
};

inline DetectorGroup detector_group(std::size_t n_modes, std::size_t bit_index) {
    if (n_modes < 2 || !is_power_of_two(n_modes)) {
        throw Error(ErrorCode::NotPowerOfTwo, "binary readout needs a power-of-two mode count, got " +
                                                  std::to_string(n_modes));
    }
    const std::size_t n_bits = ceil_log2(n_modes);
    if (bit_index >= n_bits) {
        throw Error(ErrorCode::BitOutOfRange, "bit " + std::to_string(bit_index) + " outside [0, " +
                                                  std::to_string(n_bits) + ")");
    }
    std::vector<std::size_t> members;
    members.reserve(n_modes / 2);
    for (std::size_t mu = 0; mu < n_modes; ++mu) {
        if (label_bit(mu, bit_index, n_bits)) {
            members.push_back(mu);
        }
    }
    return DetectorGroup(bit_index, n_modes, std::move(members));
}

/// All log2(N) groups, most significant bit first.
inline std::vector<DetectorGroup> detector_groups(std::size_t n_modes) {
    std::vector<DetectorGroup> out;
    const std::size_t n_bits = ceil_log2(n_modes);
    for (std::size_t b = 0; b < n_bits; ++b) {
        out.push_back(detector_group(n_modes, b));
    }
    return out;
}

namespace detail {

inline double summed_probability(const SingleParticleState &state, std::span<const std::size_t> modes) {
    double total = 0.0;
    for (std::size_t mu : modes) {
        total += std::norm(state[mu]);
    }
    return total;
}

} // namespace detail

/// <M_alpha> = sum of |psi_mu|^2 over the group's modes.
inline double group_expectation(const SingleParticleState &state, const DetectorGroup &group) {
    if (state.n_modes() != group.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "state and detector group differ in mode count");
    }
    return detail::summed_probability(state, group.member_modes());
}

inline double complement_expectation(const SingleParticleState &state, const DetectorGroup &group) {
    if (state.n_modes() != group.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "state and detector group differ in mode count");
    }
    const auto rest = group.complement_modes();
    return detail::summed_probability(state, rest);
}

/// One cascaded readout: bit alpha is 1 when counter M_alpha fired.
struct ReadoutRecord {
    std::vector<std::uint8_t> bits;
    std::size_t decoded_mode = 0;
    std::uint64_t shot_index = 0;

    [[nodiscard]] std::string bit_string() const {
        std::string s;
        for (auto b : bits) {
            s.push_back(b != 0 ? '1' : '0');
        }
        return s;
    }
};

struct PollResult {
    std::size_t mode_index = 0;
    std::size_t steps = 0;
};

/// Locates the fired mode among 2^L sorted candidates by halving the
/// interval once per detector bit.
inline PollResult binary_search_poll(std::span<const std::uint8_t> bits) {
    if (bits.empty()) {
        throw Error(ErrorCode::EmptyBits, "nothing to poll");
    }
    if (bits.size() >= 64) {
        throw Error(ErrorCode::BitOutOfRange, "at most 63 detector bits are supported");
    }
    std::uint64_t lo = 0;
    std::uint64_t hi = std::uint64_t{1} << bits.size();
    PollResult result;
    for (std::uint8_t bit : bits) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (bit != 0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++result.steps;
    }
    result.mode_index = static_cast<std::size_t>(lo);
    return result;
}

/// Inverse-CDF sampler over the mode probabilities |psi_mu|^2.
class ModeSampler {
public:
    explicit ModeSampler(const SingleParticleState &state) : cdf_(state.n_modes()) {
        double acc = 0.0;
        for (std::size_t mu = 0; mu < state.n_modes(); ++mu) {
            acc += std::norm(state[mu]);
            cdf_[mu] = acc;
            if (std::norm(state[mu]) > 0.0) {
                last_occupied_ = mu;
            }
        }
    }

    /// Maps u in [0,1) to a mode; modes with zero probability are never drawn.
    [[nodiscard]] std::size_t operator()(double u) const {
        const double target = u * cdf_.back();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
        if (it == cdf_.end()) {
            return last_occupied_;
        }
        return static_cast<std::size_t>(it - cdf_.begin());
    }

    [[nodiscard]] std::size_t n_modes() const noexcept { return cdf_.size(); }

private:
    std::vector<double> cdf_;
    std::size_t last_occupied_ = 0;
};

namespace detail {

inline void require_binary_register(std::size_t n_modes) {
    if (!is_power_of_two(n_modes)) {
        throw Error(ErrorCode::NotPowerOfTwo, "binary readout needs a power-of-two mode count, got " +
                                                  std::to_string(n_modes) + " (pad the register first)");
    }
}

inline ReadoutRecord record_for(std::size_t mode, std::size_t n_modes, std::uint64_t shot_index) {
    const std::size_t n_bits = ceil_log2(n_modes);
    ReadoutRecord rec;
    rec.bits.resize(n_bits);
    for (std::size_t b = 0; b < n_bits; ++b) {
        rec.bits[b] = label_bit(mode, b, n_bits) ? 1 : 0;
    }
    rec.decoded_mode = binary_search_poll(rec.bits).mode_index;
    rec.shot_index = shot_index;
    return rec;
}

inline double shot_uniform(std::uint64_t seed, std::uint64_t shot_index) {
    return SplitMix64(SplitMix64::substream(seed, shot_index)).uniform();
}

} // namespace detail

/// Single shot of the cascaded counters. All M_alpha are diagonal in the mode
/// basis and commute, so the shot draws the occupied mode and reads every
/// bit off its label. Shot k of seed s is a pure function of (s, k).
inline ReadoutRecord sample_readout(const SingleParticleState &state, std::uint64_t rng_seed,
                                    std::uint64_t shot_index = 0) {
    detail::require_binary_register(state.n_modes());
    const ModeSampler sampler(state);
    const std::size_t mode = sampler(detail::shot_uniform(rng_seed, shot_index));
    return detail::record_for(mode, state.n_modes(), shot_index);
}

struct Histogram {
    std::vector<std::uint64_t> counts;
    std::uint64_t total_shots = 0;

    [[nodiscard]] double frequency(std::size_t mode) const {
        return static_cast<double>(counts.at(mode)) / static_cast<double>(total_shots);
    }

    /// `mode_index,count,frequency` with header, LF line endings.
    void write_csv(std::ostream &os) const {
        os << "mode_index,count,frequency\n";
        for (std::size_t mu = 0; mu < counts.size(); ++mu) {
            os << mu << ',' << counts[mu] << ',' << format_real(frequency(mu)) << '\n';
        }
    }
};

/// Histogram of decoded modes over n_shots independent shots.
inline Histogram repeated_readout(const SingleParticleState &state, std::uint64_t n_shots, std::uint64_t rng_seed) {
    if (n_shots < 1) {
        throw Error(ErrorCode::TooSmall, "at least one shot is required");
    }
    detail::require_binary_register(state.n_modes());
    const ModeSampler sampler(state);
    Histogram h;
    h.counts.assign(state.n_modes(), 0);
    h.total_shots = n_shots;
    for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
        const std::size_t mode = sampler(detail::shot_uniform(rng_seed, shot));
        const auto rec = detail::record_for(mode, state.n_modes(), shot);
        ++h.counts[rec.decoded_mode];
    }
    return h;
}

} // namespace modalqc
