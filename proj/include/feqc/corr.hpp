// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "feqc/circuit.hpp"
#include "feqc/executor.hpp"

namespace feqc {

/// Fermionic Gaussian state stored as its two-point matrix
/// M(mu, nu) = <a†_mu a_nu>, indexed by mode ordinal.
///
/// Cost of every operation is polynomial in the number of modes, except
/// single_occupancy_probability, whose expansion has 3^m terms for m arms.
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(int num_arms);
  CorrelationMatrix(int num_arms, Matrix m);

  int num_arms() const { return num_arms_; }
  int num_modes() const { return 2 * num_arms_; }
  const Matrix& matrix() const { return m_; }
  Complex operator()(ModeIndex a, ModeIndex b) const { return m_(a.ordinal(), b.ordinal()); }

  bool is_hermitian(double tol = 1e-10) const;
  /// Eigenvalues in [-tol, 1 + tol].
  bool eigenvalues_in_unit_interval(double tol = 1e-9) const;
  /// M^2 = M, true for pure Gaussian states.
  bool is_projector(double tol = 1e-8) const;

  void check_mode(ModeIndex mode) const;

 private:
  int num_arms_;
  Matrix m_;
};

/// Diagonal 0/1 matrix.
CorrelationMatrix init_from_occupations(std::span<const ModeIndex> occupied, int total_arms);

/// Adds one electron with spinor (alpha, beta) on an arm that is empty.
CorrelationMatrix add_electron(const CorrelationMatrix& m, int arm, Complex alpha, Complex beta);

/// Same convention as apply_single_particle_unitary: a†_mu -> sum_nu U(nu, mu) a†_nu.
CorrelationMatrix evolve(const CorrelationMatrix& m, std::span<const ModeIndex> modes,
                         const Matrix& u);

double occupation_probability(const CorrelationMatrix& m, ModeIndex mode);

/// Conditions on n_mode = outcome. Returns the outcome probability and the
/// conditional Gaussian state.
std::pair<double, CorrelationMatrix> project_occupation(const CorrelationMatrix& m,
                                                        ModeIndex mode, int outcome);

/// <prod_{mu in A} n_mu> = det(M restricted to A x A).
double principal_minor_probability(const CorrelationMatrix& m, std::span<const ModeIndex> modes);

struct TermCountedProbability {
  double probability = 0.0;
  std::uint64_t terms = 0;
};

/// Probability that every listed arm holds exactly one electron, from the
/// expansion of prod_i (n_i,up + n_i,down - 2 n_i,up n_i,down) into
/// 3^m principal minors.
TermCountedProbability single_occupancy_probability(const CorrelationMatrix& m,
                                                    std::span<const int> arms);

struct CorrBranch {
  OutcomeList outcomes;
  double probability = 0.0;
};

struct CorrRunResult {
  std::vector<CorrBranch> branches;
  /// Determinants evaluated for outcome probabilities.
  std::uint64_t terms = 0;
  double wall_ms = 0.0;
};

/// Branch enumeration on the Gaussian backend. Supports electron
/// preparations, every gate, occupation and charge measurements, and
/// conditionals on them. Bell preparations, parity and spin measurements
/// throw NonGaussianOperation; so does a charge-1 outcome that superposes
/// both spin components when a later measurement depends on it.
CorrRunResult corr_enumerate(const Circuit& circuit);

}  // namespace feqc
