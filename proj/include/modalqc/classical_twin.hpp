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
#include <ostream>

#include "modalqc/format.hpp"
#include "modalqc/processor.hpp"
#include "modalqc/register.hpp"

namespace modalqc {

/// First-order correlation C(x; x') = f*(x) f(x') sampled on a grid at one
/// readout time, for f either the single-particle wavefunction or the
/// classical analytic signal.
class CorrelationMatrix {
public:
    CorrelationMatrix(ComplexMatrix values, Eigen::VectorXd grid) : values_(std::move(values)), grid_(std::move(grid)) {
        if (values_.rows() != values_.cols() || values_.rows() != grid_.size()) {
            throw Error(ErrorCode::DimensionMismatch, "correlation matrix must be G x G on a G-point grid");
        }
    }

    /// Outer product conj(f) f^T.
    static CorrelationMatrix from_signal(const ComplexVector &signal, Eigen::VectorXd grid) {
        return CorrelationMatrix(signal.conjugate() * signal.transpose(), std::move(grid));
    }

    [[nodiscard]] const ComplexMatrix &values() const noexcept { return values_; }
    [[nodiscard]] const Eigen::VectorXd &grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    [[nodiscard]] Complex operator()(std::size_t x, std::size_t xp) const {
        return values_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(xp));
    }

    [[nodiscard]] Complex trace() const { return values_.trace(); }

    [[nodiscard]] double hermiticity_deviation() const {
        return (values_ - values_.adjoint()).cwiseAbs().maxCoeff();
    }

    /// Row-major, one entry per line: `row,col,re,im`.
    void write_csv(std::ostream &os) const {
        os << "row,col,re,im\n";
        for (Eigen::Index r = 0; r < values_.rows(); ++r) {
            for (Eigen::Index c = 0; c < values_.cols(); ++c) {
                const Complex v = values_(r, c);
                os << r << ',' << c << ',' << format_real(v.real()) << ',' << format_real(v.imag()) << '\n';
            }
        }
    }

private:
    ComplexMatrix values_;
    Eigen::VectorXd grid_;
};

inline double max_abs_difference(const CorrelationMatrix &a, const CorrelationMatrix &b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "correlation matrices differ in size");
    }
    return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

/// E' = U E, the same linear map the register coefficients undergo.
inline ClassicalField propagate_field(const ClassicalField &field, const UnitaryOp &u) {
    if (field.n_modes() != u.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "field and unitary differ in mode count");
    }
    return ClassicalField(u.matrix() * field.amplitudes());
}

/// Time-propagated mode functions u_l(x, t) = sum_k u_k(x) U_kl. Expanding
/// fixed coefficients in these gives the same wave as expanding U c in the
/// initial modes.
inline ModeBasis propagate_basis(const ModeBasis &basis, const UnitaryOp &u) {
    if (basis.n_modes() != u.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "basis and unitary differ in mode count");
    }
    return ModeBasis(basis.grid(), basis.functions() * u.matrix());
}

/// psi(x) = sum_l psi_l u_l(x) on the basis grid.
inline ComplexVector wavefunction(const SingleParticleState &state, const ModeBasis &basis) {
    if (state.n_modes() != basis.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "state has " + std::to_string(state.n_modes()) +
                                                      " modes, basis has " + std::to_string(basis.n_modes()));
    }
    return basis.functions() * state.amplitudes();
}

inline ComplexVector analytic_signal(const ClassicalField &field, const ModeBasis &basis) {
    if (field.n_modes() != basis.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "field has " + std::to_string(field.n_modes()) +
                                                      " modes, basis has " + std::to_string(basis.n_modes()));
    }
    return basis.functions() * field.amplitudes();
}

/// <psi^dagger(x) psi(x')> = psi*(x) psi(x') for a single particle. The
/// proportionality constant to the detection probability is taken as 1.
inline CorrelationMatrix quantum_correlation(const SingleParticleState &state, const ModeBasis &basis) {
    return CorrelationMatrix::from_signal(wavefunction(state, basis), basis.grid());
}

/// E*(x) E(x') for a classical analytic signal.
inline CorrelationMatrix classical_correlation(const ClassicalField &field, const ModeBasis &basis) {
    return CorrelationMatrix::from_signal(analytic_signal(field, basis), basis.grid());
}

/// Runs the register through U (coefficients evolve, modes fixed) and its
/// classical image through U (modes evolve, coefficients fixed), then
/// returns max |C_quantum - C_classical| over the grid.
inline double equivalence_check(const SingleParticleState &state, const UnitaryOp &u, const ModeBasis &basis) {
    if (state.n_modes() != u.n_modes() || state.n_modes() != basis.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "state, unitary and basis must share the mode count");
    }
    const CorrelationMatrix quantum = quantum_correlation(apply_unitary(state, u), basis);
    const CorrelationMatrix classical = classical_correlation(to_classical_field(state), propagate_basis(basis, u));
    return max_abs_difference(quantum, classical);
}

} // namespace modalqc
