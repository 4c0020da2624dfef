// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "feqc/mode.hpp"

namespace feqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Entries with |amplitude| below this are dropped.
inline constexpr double kPruneThreshold = 1e-12;

/// Sparse second-quantized state of spinful fermions on `num_arms` arms.
///
/// Basis key |n> is a†_{k1} a†_{k2} ... |vac> with k1 < k2 < ... in mode
/// order. Amplitudes are kept in an ordered map so iteration (and every
/// derived output) is deterministic.
class FockState {
 public:
  using Amplitudes = std::map<OccupationKey, Complex>;

  explicit FockState(int num_arms);
  FockState(int num_arms, Amplitudes amplitudes);

  int num_arms() const { return num_arms_; }
  int num_modes() const { return 2 * num_arms_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  bool empty() const { return amplitudes_.empty(); }
  std::size_t size() const { return amplitudes_.size(); }

  Complex amplitude(OccupationKey key) const;
  /// Adds `value` to the amplitude at `key`; pruning happens in prune().
  void accumulate(OccupationKey key, Complex value);
  void prune();

  double norm_squared() const;
  /// Divides by the norm. Throws PreconditionViolation on a zero state.
  void normalize();
  void scale(Complex factor);

  bool valid_arm(int arm) const { return arm >= 1 && arm <= num_arms_; }
  void check_arm(int arm) const;
  void check_mode(ModeIndex mode) const;

  /// Expectation of the number operator on `mode`.
  double occupation(ModeIndex mode) const;
  /// Expectation of total particle number.
  double particle_number() const;

 private:
  int num_arms_;
  Amplitudes amplitudes_;
};

FockState vacuum(int num_arms);

/// Raw a†_mode with Jordan-Wigner sign; not renormalized.
FockState create(const FockState& state, ModeIndex mode);
/// Raw a_mode with Jordan-Wigner sign; not renormalized.
FockState annihilate(const FockState& state, ModeIndex mode);

Complex inner_product(const FockState& bra, const FockState& ket);
/// |<a|b>|^2, insensitive to global phase.
double fidelity(const FockState& a, const FockState& b);

/// Dense one-body matrix <a†_mu a_nu> over all modes.
Matrix one_body_density(const FockState& state);

}  // namespace feqc
