// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "feqc/fock_state.hpp"

namespace feqc {

inline constexpr double kUnitarityTolerance = 1e-10;

bool is_unitary(const Matrix& u, double tol = kUnitarityTolerance);

/// Applies the single-particle unitary generated by a†_mu -> sum_nu U(nu, mu) a†_nu
/// where mu, nu index into `modes`. Modes outside the list are untouched.
/// Preserves norm and the particle number of every key.
FockState apply_single_particle_unitary(const FockState& state,
                                        std::span<const ModeIndex> modes,
                                        const Matrix& u);

/// 50/50 beam splitter [[1,1],[1,-1]]/sqrt(2) on arms (i, j), each spin separately.
FockState beam_splitter(const FockState& state, int arm_i, int arm_j);

/// Transmits spin up, reflects spin down: swaps the down modes of the arms.
FockState polarizing_beam_splitter(const FockState& state, int arm_i, int arm_j);

/// Swaps the full contents (both spins) of two arms.
FockState swap_arms(const FockState& state, int arm_i, int arm_j);

/// Applies a 2x2 unitary on ((arm, up), (arm, down)).
FockState spin_rotation(const FockState& state, int arm, const Matrix2& u2);

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
/// (sigma_x + sigma_z) / sqrt(2)
Matrix2 hadamard();
}  // namespace pauli

Matrix beam_splitter_matrix();

/// Adds one electron to an empty arm with spinor (alpha, beta), normalized.
FockState prepare_spin(const FockState& state, int arm, Complex alpha, Complex beta);

/// Adds the Bell pair |Psi_k> across (arm_a, arm_b); |s s'> is
/// a†_{arm_a,s} a†_{arm_b,s'} acting on the input state.
///   k=0: (|ud> - |du>)/sqrt2   k=1: (|ud> + |du>)/sqrt2
///   k=2: (|uu> + |dd>)/sqrt2   k=3: (|uu> - |dd>)/sqrt2
FockState prepare_bell(const FockState& state, int k, int arm_a, int arm_b);

}  // namespace feqc
