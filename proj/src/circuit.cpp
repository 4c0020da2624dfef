// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include "feqc/circuit.hpp"

#include <map>
#include <set>

#include "feqc/errors.hpp"
#include "feqc/optics.hpp"

namespace feqc {

std::vector<int> Gate::arms() const {
  switch (kind) {
    case GateKind::rotation: return {arm_i};
    case GateKind::custom: {
      std::set<int> unique;
      for (const auto& m : modes) unique.insert(m.arm);
      return {unique.begin(), unique.end()};
    }
    default: return {arm_i, arm_j};
  }
}

bool Gate::operator==(const Gate& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case GateKind::rotation: return arm_i == other.arm_i && axis == other.axis;
    case GateKind::custom:
      return modes == other.modes && matrix.rows() == other.matrix.rows() &&
             matrix.cols() == other.matrix.cols() && matrix == other.matrix;
    default: return arm_i == other.arm_i && arm_j == other.arm_j;
  }
}

int max_outcome(MeasureKind kind) { return kind == MeasureKind::charge ? 2 : 1; }

Matrix2 rotation_matrix(RotationAxis axis) {
  switch (axis) {
    case RotationAxis::x: return pauli::x();
    case RotationAxis::y: return pauli::y();
    case RotationAxis::z: return pauli::z();
    case RotationAxis::h: return pauli::hadamard();
  }
  return pauli::identity();
}

std::vector<std::pair<std::vector<ModeIndex>, Matrix>> gate_factors(const Gate& gate) {
  Matrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const int i = gate.arm_i, j = gate.arm_j;
  switch (gate.kind) {
    case GateKind::beam_splitter:
      return {{{up(i), up(j)}, beam_splitter_matrix()}, {{down(i), down(j)}, beam_splitter_matrix()}};
    case GateKind::polarizing_beam_splitter: return {{{down(i), down(j)}, swap}};
    case GateKind::swap: return {{{up(i), up(j)}, swap}, {{down(i), down(j)}, swap}};
    case GateKind::rotation: return {{{up(i), down(i)}, Matrix(rotation_matrix(gate.axis))}};
    case GateKind::custom: return {{gate.modes, gate.matrix}};
  }
  return {};
}

FockState apply_gate(const FockState& state, const Gate& gate) {
  switch (gate.kind) {
    case GateKind::beam_splitter: return beam_splitter(state, gate.arm_i, gate.arm_j);
    case GateKind::polarizing_beam_splitter:
      return polarizing_beam_splitter(state, gate.arm_i, gate.arm_j);
    case GateKind::swap: return swap_arms(state, gate.arm_i, gate.arm_j);
    case GateKind::rotation: return spin_rotation(state, gate.arm_i, rotation_matrix(gate.axis));
    case GateKind::custom: return apply_single_particle_unitary(state, gate.modes, gate.matrix);
  }
  return state;
}

FockState apply_prep(const FockState& state, const Instruction& prep) {
  if (const auto* e = std::get_if<PrepElectron>(&prep)) {
    return prepare_spin(state, e->arm, e->alpha, e->beta);
  }
  if (const auto* b = std::get_if<PrepBell>(&prep)) {
    return prepare_bell(state, b->k, b->arm_a, b->arm_b);
  }
  throw std::invalid_argument("instruction is not a preparation");
}

namespace {

struct Validator {
  const Circuit& circuit;
  std::set<int> prepared;
  std::map<std::string, MeasureKind> labels;
  std::size_t index = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw CircuitValidationError("instruction " + std::to_string(index + 1) + ": " + msg);
  }

  void arm(int a) const {
    if (a < 1 || a > circuit.arm_count) {
      fail("arm " + std::to_string(a) + " out of range 1.." + std::to_string(circuit.arm_count));
    }
  }

  void prep(int a) {
    arm(a);
    if (!prepared.insert(a).second) fail("arm " + std::to_string(a) + " already prepared");
  }

  void gate(const Gate& g) const {
    if (g.kind == GateKind::custom) {
      if (g.modes.empty()) fail("custom gate without modes");
      for (const auto& m : g.modes) arm(m.arm);
      std::set<int> ordinals;
      for (const auto& m : g.modes)
        if (!ordinals.insert(m.ordinal()).second) fail("duplicate mode in custom gate");
      if (g.matrix.rows() != static_cast<Eigen::Index>(g.modes.size()) ||
          g.matrix.cols() != g.matrix.rows()) {
        fail("custom gate matrix has wrong shape");
      }
      return;
    }
    arm(g.arm_i);
    if (g.kind != GateKind::rotation) {
      arm(g.arm_j);
      if (g.arm_i == g.arm_j) fail("duplicate arm " + std::to_string(g.arm_i));
    }
  }

  void operator()(const PrepElectron& e) { prep(e.arm); }
  void operator()(const PrepBell& b) {
    if (b.k < 0 || b.k > 3) fail("Bell index must be 0..3");
    if (b.arm_a == b.arm_b) fail("duplicate arm " + std::to_string(b.arm_a));
    prep(b.arm_a);
    prep(b.arm_b);
  }
  void operator()(const Gate& g) const { gate(g); }
  void operator()(const Measure& m) {
    arm(m.arm);
    if (m.label.empty()) fail("empty measurement label");
    if (!labels.emplace(m.label, m.kind).second) fail("label '" + m.label + "' redefined");
  }
  void operator()(const Conditional& c) const {
    auto it = labels.find(c.label);
    if (it == labels.end()) fail("condition references undefined label '" + c.label + "'");
    if (c.value < 0 || c.value > max_outcome(it->second)) {
      fail("condition value " + std::to_string(c.value) + " is not a possible outcome");
    }
    gate(c.gate);
  }
};

}  // namespace

void Circuit::validate() const {
  if (arm_count < 1 || arm_count > kMaxArms) {
    throw CircuitValidationError("arm count must be in 1.." + std::to_string(kMaxArms));
  }
  Validator v{*this, {}, {}, 0};
  for (; v.index < instructions.size(); ++v.index) std::visit(v, instructions[v.index]);
}

std::vector<std::string> Circuit::labels() const {
  std::vector<std::string> out;
  for (const auto& ins : instructions)
    if (const auto* m = std::get_if<Measure>(&ins)) out.push_back(m->label);
  return out;
}

}  // namespace feqc
