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
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "modalqc/register.hpp"

namespace modalqc {

/// Dense N x N unitary acting on mode coefficients. Unitarity is verified
/// once, at construction.
class UnitaryOp {
public:
    explicit UnitaryOp(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
        if (matrix_.rows() != matrix_.cols()) {
            throw Error(ErrorCode::DimensionMismatch, "unitary must be square");
        }
        if (!matrix_.allFinite()) {
            throw Error(ErrorCode::NonFinite, "unitary contains NaN or Inf");
        }
        const double dev = unitarity_deviation(matrix_);
        if (dev > kUnitaryTolerance) {
            throw Error(ErrorCode::NotUnitary, "max |U^dagger U - I| = " + std::to_string(dev));
        }
    }

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] std::size_t n_modes() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

    /// Composition: (a * b) applies b first.
    friend UnitaryOp operator*(const UnitaryOp &a, const UnitaryOp &b) {
        if (a.n_modes() != b.n_modes()) {
            throw Error(ErrorCode::DimensionMismatch, "cannot compose unitaries of different size");
        }
        return UnitaryOp(a.matrix_ * b.matrix_);
    }

    /// max |M^dagger M - I|; for a tall matrix this measures how far its
    /// columns are from orthonormal.
    static double unitarity_deviation(const ComplexMatrix &m) {
        const ComplexMatrix gram = m.adjoint() * m;
        return (gram - ComplexMatrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
    }

private:
    ComplexMatrix matrix_;
};

inline UnitaryOp identity_unitary(std::size_t n_modes) {
    const auto n = static_cast<Eigen::Index>(n_modes);
    return UnitaryOp(ComplexMatrix::Identity(n, n));
}

/// psi' = U psi.
inline SingleParticleState apply_unitary(const SingleParticleState &state, const UnitaryOp &u) {
    if (state.n_modes() != u.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "state has " + std::to_string(state.n_modes()) +
                                                      " modes, unitary acts on " + std::to_string(u.n_modes()));
    }
    return state_from_evolution(u.matrix() * state.amplitudes());
}

/// Oracle: negates the amplitude of the marked mode.
inline UnitaryOp oracle_phase_flip(std::size_t n_modes, std::size_t marked_index) {
    detail::check_index(marked_index, n_modes, "marked index");
    const auto n = static_cast<Eigen::Index>(n_modes);
    ComplexMatrix m = ComplexMatrix::Identity(n, n);
    m(static_cast<Eigen::Index>(marked_index), static_cast<Eigen::Index>(marked_index)) = -1.0;
    return UnitaryOp(std::move(m));
}

/// Grover diffusion 2J/N - I, J the all-ones matrix.
inline UnitaryOp inversion_about_mean(std::size_t n_modes) {
    if (n_modes < 2) {
        throw Error(ErrorCode::TooSmall, "inversion about the mean needs at least 2 modes");
    }
    const auto n = static_cast<Eigen::Index>(n_modes);
    const double off = 2.0 / static_cast<double>(n_modes);
    ComplexMatrix m = ComplexMatrix::Constant(n, n, Complex(off, 0.0));
    m.diagonal().array() -= 1.0;
    return UnitaryOp(std::move(m));
}

/// N-port beamsplitter realized as the DFT, entries exp(+2 pi i jk/N)/sqrt(N).
/// For N = 2 this is exactly the Hadamard matrix; for larger N the sign
/// convention of the exponent matters and is the positive one.
inline UnitaryOp multiport_dft(std::size_t n_modes) {
    if (n_modes < 2) {
        throw Error(ErrorCode::TooSmall, "multiport needs at least 2 modes");
    }
    const auto n = static_cast<Eigen::Index>(n_modes);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_modes));
    ComplexMatrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto jk = static_cast<double>((j * k) % n);
            m(j, k) = std::polar(scale, 2.0 * std::numbers::pi * jk / static_cast<double>(n_modes));
        }
    }
    return UnitaryOp(std::move(m));
}

/// Default iteration count round(pi/4 * sqrt(N)).
inline std::size_t default_grover_iterations(std::size_t n_modes) {
    return static_cast<std::size_t>(
        std::llround(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n_modes))));
}

/// Single-marked-item search. Each iteration makes exactly one oracle query.
class GroverPlan {
public:
    GroverPlan(std::size_t n_modes, std::size_t marked_index, std::optional<std::size_t> n_iterations = std::nullopt)
        : n_modes_(n_modes), marked_index_(marked_index),
          n_iterations_(n_iterations.value_or(default_grover_iterations(n_modes))) {
        if (n_modes < 2) {
            throw Error(ErrorCode::TooSmall, "Grover search needs at least 2 modes");
        }
        detail::check_index(marked_index, n_modes, "marked index");
    }

    [[nodiscard]] std::size_t n_modes() const noexcept { return n_modes_; }
    [[nodiscard]] std::size_t marked_index() const noexcept { return marked_index_; }
    [[nodiscard]] std::size_t n_iterations() const noexcept { return n_iterations_; }
    [[nodiscard]] std::size_t query_count() const noexcept { return n_iterations_; }

private:
    std::size_t n_modes_;
    std::size_t marked_index_;
    std::size_t n_iterations_;
};

struct GroverResult {
    SingleParticleState state;
    std::size_t query_count = 0;

    [[nodiscard]] double success_probability(std::size_t marked_index) const { return std::norm(state[marked_index]); }
};

/// Prepares the uniform superposition with the multiport acting on mode 0,
/// then applies [oracle, inversion about the mean] n_iterations times.
inline GroverResult grover_run(const GroverPlan &plan) {
    const std::size_t n = plan.n_modes();
    SingleParticleState state = apply_unitary(basis_state(n, 0), multiport_dft(n));
    const UnitaryOp oracle = oracle_phase_flip(n, plan.marked_index());
    const UnitaryOp diffusion = inversion_about_mean(n);
    for (std::size_t k = 0; k < plan.n_iterations(); ++k) {
        state = apply_unitary(apply_unitary(state, oracle), diffusion);
    }
    return GroverResult{std::move(state), plan.query_count()};
}

} // namespace modalqc
