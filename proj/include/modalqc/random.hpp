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

#include <cmath>
#include <cstdint>
#include <numbers>

#include "modalqc/processor.hpp"
#include "modalqc/register.hpp"

namespace modalqc {

/// SplitMix64 (Steele, Lea, Flood 2014). Fully specified integer arithmetic,
/// so a seed yields the same stream on every platform.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t operator()() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) built from the top 53 bits.
    constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate (Box-Muller, one value per call).
    double normal() noexcept {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Independent sub-stream seed for item `index` of the stream `seed`.
    static constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t index) noexcept {
        return mix(mix(seed ^ 0x6A09E667F3BCC909ULL) + index * 0x9E3779B97F4A7C15ULL);
    }

private:
    std::uint64_t state_;
};

inline ComplexVector random_gaussian_vector(std::size_t n, SplitMix64 &rng) {
    ComplexVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v[i] = Complex(re, im);
    }
    return v;
}

/// Haar-distributed state: a normalized complex Gaussian vector.
inline SingleParticleState random_state(std::size_t n_modes, SplitMix64 &rng) {
    return new_state(random_gaussian_vector(n_modes, rng));
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal folded back into Q.
inline UnitaryOp random_unitary(std::size_t n_modes, SplitMix64 &rng) {
    const auto n = static_cast<Eigen::Index>(n_modes);
    ComplexMatrix g(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        g.col(c) = random_gaussian_vector(n_modes, rng);
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index c = 0; c < n; ++c) {
        const Complex d = r(c, c);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(c) *= d / mag;
        }
    }
    return UnitaryOp(std::move(q));
}

} // namespace modalqc
