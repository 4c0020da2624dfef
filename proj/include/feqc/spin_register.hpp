// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "feqc/fock_state.hpp"

namespace feqc {

// Qubit view of singly-occupied arms: |0> = up, |1> = down. For a list of
// arms the first arm is the most significant qubit. Changing the spin of
// an electron alone in its arm does not change any Jordan-Wigner sign, so
// the spin register is a sign-free relabeling of the Fock basis.

using Vector = Eigen::VectorXcd;

/// Builds a state with exactly one electron on each listed arm and the
/// given 2^k spin amplitudes (normalized). Other arms are empty.
FockState embed_spin_state(int num_arms, std::span<const int> arms, const Vector& amplitudes);

/// Reduced 2^k x 2^k spin density matrix of the listed arms. Requires
/// charge 1 on every listed arm in every key.
Matrix spin_density(const FockState& state, std::span<const int> arms);

/// <psi| rho |psi> for the reduced state of the listed arms.
double spin_fidelity(const FockState& state, std::span<const int> arms, const Vector& target);

/// Applies an arbitrary 2^k x 2^k operator on the spins of the listed arms
/// (not a single-particle operation; used to build ideal reference states).
FockState apply_spin_operator(const FockState& state, std::span<const int> arms,
                              const Matrix& op);

/// Fock key with one electron per listed arm, spins given by `index`.
OccupationKey spin_basis_key(std::span<const int> arms, Eigen::Index index);

Vector spinor(Complex alpha, Complex beta);
Vector kron(const Vector& a, const Vector& b);

}  // namespace feqc
