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
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "modalqc/bits.hpp"
#include "modalqc/error.hpp"

namespace modalqc {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

namespace detail {

inline bool all_finite(const ComplexVector &v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
            return false;
        }
    }
    return true;
}

inline void check_index(std::size_t index, std::size_t n, const char *what) {
    if (index >= n) {
        throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " " + std::to_string(index) +
                                                    " outside [0, " + std::to_string(n) + ")");
    }
}

} // namespace detail

/// Single particle spread over N modes: |psi> = sum_l psi_l a_l^dagger |vac>.
/// The amplitude vector always has unit Euclidean norm.
class SingleParticleState {
public:
    [[nodiscard]] const ComplexVector &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::size_t n_modes() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    [[nodiscard]] Complex operator[](std::size_t mode) const { return amplitudes_[static_cast<Eigen::Index>(mode)]; }

    /// Appends zero-amplitude modes up to the next power of two. Probabilities
    /// of the original modes are unchanged.
    [[nodiscard]] SingleParticleState padded_to_power_of_two() const {
        const std::size_t target = next_power_of_two(n_modes());
        if (target == n_modes()) {
            return *this;
        }
        ComplexVector padded = ComplexVector::Zero(static_cast<Eigen::Index>(target));
        padded.head(amplitudes_.size()) = amplitudes_;
        return SingleParticleState(std::move(padded));
    }

private:
    explicit SingleParticleState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {}

    friend SingleParticleState new_state(ComplexVector amplitudes);
    friend SingleParticleState basis_state(std::size_t n_modes, std::size_t mode_index);
    friend SingleParticleState state_from_evolution(ComplexVector amplitudes);

    ComplexVector amplitudes_;
};

/// Validates and normalizes an amplitude vector.
inline SingleParticleState new_state(ComplexVector amplitudes) {
    if (amplitudes.size() < 2) {
        throw Error(ErrorCode::TooSmall, "a register needs at least 2 modes, got " +
                                             std::to_string(amplitudes.size()));
    }
    if (!detail::all_finite(amplitudes)) {
        throw Error(ErrorCode::NonFinite, "amplitude vector contains NaN or Inf");
    }
    const double norm = amplitudes.norm();
    if (norm == 0.0) {
        throw Error(ErrorCode::ZeroNorm, "amplitude vector is identically zero");
    }
    if (!std::isfinite(norm)) {
        throw Error(ErrorCode::NonFinite, "amplitude norm overflows");
    }
    amplitudes /= norm;
    return SingleParticleState(std::move(amplitudes));
}

inline SingleParticleState new_state(std::span<const Complex> amplitudes) {
    ComplexVector v(static_cast<Eigen::Index>(amplitudes.size()));
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = amplitudes[i];
    }
    return new_state(std::move(v));
}

inline SingleParticleState basis_state(std::size_t n_modes, std::size_t mode_index) {
    if (n_modes < 2) {
        throw Error(ErrorCode::TooSmall, "a register needs at least 2 modes");
    }
    detail::check_index(mode_index, n_modes, "mode index");
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n_modes));
    v[static_cast<Eigen::Index>(mode_index)] = 1.0;
    return SingleParticleState(std::move(v));
}

/// Wraps the output of a unitary map. A norm drift beyond the unitarity
/// tolerance is an error; rounding drift above 1e-13 is renormalized away so
/// long evolution chains keep the 1e-12 norm invariant. Below that the
/// vector is kept bit-for-bit.
inline SingleParticleState state_from_evolution(ComplexVector amplitudes) {
    if (!detail::all_finite(amplitudes)) {
        throw Error(ErrorCode::NonFinite, "evolved amplitudes contain NaN or Inf");
    }
    const double norm2 = amplitudes.squaredNorm();
    const double drift = std::abs(norm2 - 1.0);
    if (drift > kUnitaryTolerance) {
        throw Error(ErrorCode::NotUnitary, "evolution changed the squared norm by " + std::to_string(drift));
    }
    if (drift > 1e-13) {
        amplitudes /= std::sqrt(norm2);
    }
    return SingleParticleState(std::move(amplitudes));
}

/// Analytic-signal mode coefficients E_l of a classical wave.
class ClassicalField {
public:
    explicit ClassicalField(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
        if (!detail::all_finite(amplitudes_)) {
            throw Error(ErrorCode::NonFinite, "field amplitudes contain NaN or Inf");
        }
    }

    [[nodiscard]] const ComplexVector &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::size_t n_modes() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

private:
    ComplexVector amplitudes_;
};

/// The quantum-classical correspondence on coefficients: E_l = psi_l.
inline ClassicalField to_classical_field(const SingleParticleState &state) {
    return ClassicalField(state.amplitudes());
}

/// Orthonormal mode functions u_l(x) sampled on a grid of G points, stored as
/// the columns of a G x N matrix. The grid inner product is the plain sum
/// over sample points.
class ModeBasis {
public:
    ModeBasis(Eigen::VectorXd grid, ComplexMatrix functions)
        : grid_(std::move(grid)), functions_(std::move(functions)) {
        if (functions_.rows() != grid_.size()) {
            throw Error(ErrorCode::DimensionMismatch, "mode functions must have one row per grid point");
        }
        if (functions_.rows() < functions_.cols()) {
            throw Error(ErrorCode::GridTooSmall, "grid has fewer points than modes");
        }
        const ComplexMatrix gram = functions_.adjoint() * functions_;
        const double dev = (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
        if (dev > kUnitaryTolerance) {
            throw Error(ErrorCode::NotUnitary, "mode functions are not orthonormal (deviation " +
                                                   std::to_string(dev) + ")");
        }
    }

    [[nodiscard]] const Eigen::VectorXd &grid() const noexcept { return grid_; }
    [[nodiscard]] const ComplexMatrix &functions() const noexcept { return functions_; }
    [[nodiscard]] std::size_t n_modes() const noexcept { return static_cast<std::size_t>(functions_.cols()); }
    [[nodiscard]] std::size_t grid_size() const noexcept { return static_cast<std::size_t>(functions_.rows()); }

private:
    Eigen::VectorXd grid_;
    ComplexMatrix functions_;
};

/// Discrete Fourier modes u_k(x_j) = exp(2 pi i jk/G)/sqrt(G) on the grid
/// x_j = j/G, j = 0..G-1, keeping the first N frequencies.
inline ModeBasis fourier_mode_basis(std::size_t grid_size, std::size_t n_modes) {
    if (n_modes < 1) {
        throw Error(ErrorCode::TooSmall, "basis needs at least one mode");
    }
    if (grid_size < n_modes) {
        throw Error(ErrorCode::GridTooSmall, "grid size " + std::to_string(grid_size) +
                                                 " is smaller than mode count " + std::to_string(n_modes));
    }
    const auto g = static_cast<Eigen::Index>(grid_size);
    const auto n = static_cast<Eigen::Index>(n_modes);
    Eigen::VectorXd grid(g);
    ComplexMatrix u(g, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(grid_size));
    for (Eigen::Index j = 0; j < g; ++j) {
        grid[j] = static_cast<double>(j) / static_cast<double>(grid_size);
        for (Eigen::Index k = 0; k < n; ++k) {
            // Reduce jk mod G first so the phase argument stays small.
            const auto jk = static_cast<double>((j * k) % g);
            const double phase = 2.0 * std::numbers::pi * jk / static_cast<double>(grid_size);
            u(j, k) = std::polar(scale, phase);
        }
    }
    return ModeBasis(std::move(grid), std::move(u));
}

/// Mode functions equal to the standard basis vectors, so that psi(x_j) = psi_j.
inline ModeBasis identity_mode_basis(std::size_t n_modes) {
    const auto n = static_cast<Eigen::Index>(n_modes);
    return ModeBasis(Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1)),
                     ComplexMatrix::Identity(n, n));
}

/// Flattens a composite mode label (one index per degree of freedom) into a
/// single mode index, row-major: the last degree of freedom varies fastest.
inline std::size_t flatten_mode_label(std::span<const std::size_t> label, std::span<const std::size_t> extents) {
    if (label.size() != extents.size()) {
        throw Error(ErrorCode::DimensionMismatch, "label and extents differ in length");
    }
    std::size_t index = 0;
    for (std::size_t d = 0; d < label.size(); ++d) {
        detail::check_index(label[d], extents[d], "label component");
        index = index * extents[d] + label[d];
    }
    return index;
}

} // namespace modalqc
