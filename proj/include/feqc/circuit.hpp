// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "feqc/fock_state.hpp"

namespace feqc {

/// Adds one electron with spinor (alpha, beta) to an empty arm.
struct PrepElectron {
  int arm = 1;
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  bool operator==(const PrepElectron&) const = default;
};

/// Adds Bell pair |Psi_k> across (arm_a, arm_b).
struct PrepBell {
  int k = 0;
  int arm_a = 1;
  int arm_b = 2;
  bool operator==(const PrepBell&) const = default;
};

enum class RotationAxis { x, y, z, h };

enum class GateKind { beam_splitter, polarizing_beam_splitter, rotation, swap, custom };

/// A single-particle (bilinear) element. `custom` carries an explicit
/// mode list and matrix; it is library-only and has no textual form.
struct Gate {
  GateKind kind = GateKind::rotation;
  int arm_i = 1;
  int arm_j = 0;
  RotationAxis axis = RotationAxis::x;
  std::vector<ModeIndex> modes;
  Matrix matrix;

  static Gate bs(int i, int j) { return {GateKind::beam_splitter, i, j, {}, {}, {}}; }
  static Gate pbs(int i, int j) { return {GateKind::polarizing_beam_splitter, i, j, {}, {}, {}}; }
  static Gate swap(int i, int j) { return {GateKind::swap, i, j, {}, {}, {}}; }
  static Gate rot(int arm, RotationAxis a) { return {GateKind::rotation, arm, 0, a, {}, {}}; }
  static Gate custom(std::vector<ModeIndex> modes, Matrix u) {
    return {GateKind::custom, 0, 0, RotationAxis::x, std::move(modes), std::move(u)};
  }

  std::vector<int> arms() const;
  bool operator==(const Gate& other) const;
};

enum class MeasureKind { charge, parity, spin, occupation };

struct Measure {
  std::string label;
  MeasureKind kind = MeasureKind::charge;
  int arm = 1;
  Spin spin = Spin::up;  // occupation only
  bool operator==(const Measure&) const = default;
};

/// Applies `gate` in branches where measurement `label` returned `value`.
struct Conditional {
  std::string label;
  int value = 0;
  Gate gate;
  bool operator==(const Conditional&) const = default;
};

using Instruction = std::variant<PrepElectron, PrepBell, Gate, Measure, Conditional>;

struct Circuit {
  int arm_count = 1;
  std::vector<Instruction> instructions;

  /// Throws CircuitValidationError on: arm out of range, duplicate arms in
  /// one element, repeated label, conditional on an unknown or later label,
  /// preparation on an already prepared arm.
  void validate() const;

  /// Measurement labels in program order.
  std::vector<std::string> labels() const;

  bool operator==(const Circuit&) const = default;
};

/// Largest outcome value a measurement kind can return.
int max_outcome(MeasureKind kind);

Matrix2 rotation_matrix(RotationAxis axis);

/// The gate as a product of single-particle unitaries (modes, matrix),
/// applied in order.
std::vector<std::pair<std::vector<ModeIndex>, Matrix>> gate_factors(const Gate& gate);

/// Applies a gate (any kind) to a Fock state.
FockState apply_gate(const FockState& state, const Gate& gate);

/// Applies a preparation to a Fock state.
FockState apply_prep(const FockState& state, const Instruction& prep);

}  // namespace feqc
