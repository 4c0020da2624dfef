// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include "feqc/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "feqc/errors.hpp"
#include "feqc/optics.hpp"

namespace feqc {
namespace {

void require_single_occupancy(const FockState& state, int arm, const char* role) {
  state.check_arm(arm);
  for (const auto& [key, amp] : state.amplitudes()) {
    if (arm_charge(key, arm) != 1) {
      throw PreconditionViolation(std::string(role) + " arm " + std::to_string(arm) +
                                  " must hold exactly one electron");
    }
  }
}

void require_distinct(std::initializer_list<int> arms) {
  std::vector<int> v(arms);
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw std::invalid_argument("gadget arms must be distinct");
  }
}

std::vector<MeasurementOutcome> detect(const FockState& state, int arm, DetectorMode mode) {
  return mode == DetectorMode::charge ? measure_charge(state, arm) : measure_parity(state, arm);
}

}  // namespace

// ---------------------------------------------------------------------------
// Bell-state analyzer

int bell_value(std::span<const int> parities) {
  int B = 0;
  int running = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    running *= i < parities.size() ? parities[i] : 0;
    B += running;
  }
  return B;
}

std::vector<BellBranch> bell_analyzer(const FockState& state, int arm_a, int arm_b,
                                      DetectorMode mode, bool early_exit) {
  require_distinct({arm_a, arm_b});
  require_single_occupancy(state, arm_a, "Bell analyzer");
  require_single_occupancy(state, arm_b, "Bell analyzer");

  struct Partial {
    FockState state;
    double probability;
    std::vector<int> parities;
    OutcomeList detectors;
  };
  std::vector<Partial> active{{state, 1.0, {}, {}}};
  std::vector<BellBranch> done;
  const char* prefix = mode == DetectorMode::charge ? "q" : "p";

  for (int stage = 0; stage < 3; ++stage) {
    std::vector<Partial> next;
    for (auto& part : active) {
      const bool antibunched = std::all_of(part.parities.begin(), part.parities.end(),
                                           [](int p) { return p == 1; });
      if (early_exit && !antibunched) {
        done.push_back({{bell_value(part.parities), part.parities}, part.probability,
                        part.detectors, std::move(part.state)});
        continue;
      }
      FockState s = std::move(part.state);
      if (stage > 0 && part.parities.back() == 1) {
        s = spin_rotation(s, arm_b, stage == 1 ? pauli::z() : pauli::x());
      }
      s = beam_splitter(s, arm_a, arm_b);
      for (auto& o : detect(s, arm_a, mode)) {
        Partial child{std::move(o.post_state), part.probability * o.probability, part.parities,
                      part.detectors};
        child.parities.push_back(o.value % 2);
        child.detectors.emplace_back(prefix + std::to_string(stage + 1), o.value);
        next.push_back(std::move(child));
      }
    }
    active = std::move(next);
  }
  for (auto& part : active) {
    done.push_back({{bell_value(part.parities), part.parities}, part.probability, part.detectors,
                    std::move(part.state)});
  }
  std::stable_sort(done.begin(), done.end(), [](const BellBranch& l, const BellBranch& r) {
    return l.detectors < r.detectors;
  });
  return done;
}

Circuit bell_analyzer_circuit(int arm_count, int arm_a, int arm_b, DetectorMode mode) {
  const MeasureKind kind = mode == DetectorMode::charge ? MeasureKind::charge : MeasureKind::parity;
  const std::string prefix = mode == DetectorMode::charge ? "q" : "p";
  Circuit c{arm_count, {}};
  const RotationAxis pre[] = {RotationAxis::z, RotationAxis::x};
  for (int stage = 0; stage < 3; ++stage) {
    if (stage > 0) {
      c.instructions.push_back(
          Conditional{prefix + std::to_string(stage), 1, Gate::rot(arm_b, pre[stage - 1])});
    }
    c.instructions.push_back(Gate::bs(arm_a, arm_b));
    c.instructions.push_back(Measure{prefix + std::to_string(stage + 1), kind, arm_a, Spin::up});
  }
  return c;
}

int bell_value_from_outcomes(const OutcomeList& outcomes) {
  std::vector<int> parities;
  for (const auto* name : {"1", "2", "3"}) {
    auto v = find_outcome(outcomes, std::string("p") + name);
    if (!v) v = find_outcome(outcomes, std::string("q") + name);
    if (!v) break;
    parities.push_back(*v % 2);
  }
  return bell_value(parities);
}

// ---------------------------------------------------------------------------
// Encoder

std::vector<EncoderBranch> encoder(const FockState& state, int arm_a, int arm_b,
                                   bool apply_correction) {
  require_distinct({arm_a, arm_b});
  require_single_occupancy(state, arm_a, "encoder input");
  require_single_occupancy(state, arm_b, "encoder input");
  std::vector<EncoderBranch> out;
  for (auto& o : measure_parity(polarizing_beam_splitter(state, arm_a, arm_b), arm_a)) {
    FockState s = polarizing_beam_splitter(o.post_state, arm_a, arm_b);
    const bool correct = apply_correction && o.value == 0;
    if (correct) s = spin_rotation(s, arm_b, pauli::x());
    out.push_back({o.value, o.probability, correct, std::move(s)});
  }
  return out;
}

std::vector<EncoderBranch> spin_parity_readout(const FockState& state, int arm_a, int arm_b) {
  return encoder(state, arm_a, arm_b, false);
}

Circuit encoder_circuit(int arm_count, int arm_a, int arm_b, bool apply_correction,
                        const std::string& label) {
  Circuit c{arm_count, {}};
  c.instructions.push_back(Gate::pbs(arm_a, arm_b));
  c.instructions.push_back(Measure{label, MeasureKind::parity, arm_a, Spin::up});
  c.instructions.push_back(Gate::pbs(arm_a, arm_b));
  if (apply_correction) {
    c.instructions.push_back(Conditional{label, 0, Gate::rot(arm_b, RotationAxis::x)});
  }
  return c;
}

// ---------------------------------------------------------------------------
// CNOT

std::vector<HadamardPbsBranch> hadamard_pbs_gadget(const FockState& state, int upper_arm,
                                                   int lower_arm) {
  require_distinct({upper_arm, lower_arm});
  require_single_occupancy(state, upper_arm, "upper");
  require_single_occupancy(state, lower_arm, "lower");
  const Matrix2 h = pauli::hadamard();
  FockState s = spin_rotation(spin_rotation(state, upper_arm, h), lower_arm, h);
  s = polarizing_beam_splitter(s, upper_arm, lower_arm);
  std::vector<HadamardPbsBranch> out;
  for (auto& parity : measure_parity(s, upper_arm)) {
    FockState t = polarizing_beam_splitter(parity.post_state, upper_arm, lower_arm);
    t = spin_rotation(spin_rotation(t, upper_arm, h), lower_arm, h);
    for (auto& spin : measure_spin(t, upper_arm)) {
      out.push_back({parity.value, spin.value, parity.probability * spin.probability,
                     std::move(spin.post_state)});
    }
  }
  return out;
}

int control_branch_formula(int x, int p1) { return (x + p1 + 1) % 2; }

bool cnot_needs_control_correction(int p2) { return p2 == 0; }

bool cnot_needs_target_correction(int p1, int z) { return (z == 1 && p1 == 1) || (z == 0 && p1 == 0); }

std::vector<GadgetBranchRecord> cnot(const FockState& state, int control_arm, int target_arm,
                                     int ancilla_arm, const CnotOptions& options) {
  require_distinct({control_arm, target_arm, ancilla_arm});
  require_single_occupancy(state, control_arm, "control");
  require_single_occupancy(state, target_arm, "target");
  require_single_occupancy(state, ancilla_arm, "ancilla");
  const int anc[] = {ancilla_arm};
  const double h = 1.0 / std::sqrt(2.0);
  if (spin_fidelity(state, anc, spinor(h, h)) < 1.0 - 1e-9) {
    throw PreconditionViolation("ancilla must be prepared in (|up> + |down>)/sqrt(2)");
  }

  std::vector<GadgetBranchRecord> out;
  for (const auto& box1 : encoder(state, control_arm, ancilla_arm, false)) {
    for (auto& box2 : hadamard_pbs_gadget(box1.output, ancilla_arm, target_arm)) {
      GadgetBranchRecord rec{{}, {}, 0.0, FockState(state.num_arms())};
      rec.outcomes = {{"p1", box1.p}, {"p2", box2.p2}, {"z", box2.z}};
      rec.probability = box1.probability * box2.probability;
      FockState s = std::move(box2.output);
      if (options.control_correction && cnot_needs_control_correction(box2.p2)) {
        s = spin_rotation(s, control_arm, pauli::z());
        rec.applied_corrections.push_back({control_arm, RotationAxis::z});
      }
      if (options.target_correction && cnot_needs_target_correction(box1.p, box2.z)) {
        s = spin_rotation(s, target_arm, pauli::x());
        rec.applied_corrections.push_back({target_arm, RotationAxis::x});
      }
      rec.output_state = std::move(s);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

Circuit cnot_circuit(int arm_count, int control_arm, int target_arm, int ancilla_arm) {
  Circuit c = encoder_circuit(arm_count, control_arm, ancilla_arm, false, "p1");
  auto& ins = c.instructions;
  ins.push_back(Gate::rot(ancilla_arm, RotationAxis::h));
  ins.push_back(Gate::rot(target_arm, RotationAxis::h));
  ins.push_back(Gate::pbs(ancilla_arm, target_arm));
  ins.push_back(Measure{"p2", MeasureKind::parity, ancilla_arm, Spin::up});
  ins.push_back(Gate::pbs(ancilla_arm, target_arm));
  ins.push_back(Gate::rot(ancilla_arm, RotationAxis::h));
  ins.push_back(Gate::rot(target_arm, RotationAxis::h));
  ins.push_back(Measure{"z", MeasureKind::spin, ancilla_arm, Spin::up});
  ins.push_back(Conditional{"p2", 0, Gate::rot(control_arm, RotationAxis::z)});
  // sigma_x iff z == p1: (z == 0) xor (p1 == 1).
  ins.push_back(Conditional{"z", 0, Gate::rot(target_arm, RotationAxis::x)});
  ins.push_back(Conditional{"p1", 1, Gate::rot(target_arm, RotationAxis::x)});
  return c;
}

Matrix cnot_matrix() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

// ---------------------------------------------------------------------------
// Hadamard-PBS branch table

std::vector<HadamardPbsRow> hadamard_pbs_table() {
  constexpr int kUpper = 1, kLower = 2, kRefA = 3, kRefY = 4;
  const int pair[] = {kUpper, kLower};
  const int all[] = {kUpper, kLower, kRefA, kRefY};
  const int lower[] = {kLower};

  auto basis = [](int bit) { return bit ? spinor(0.0, 1.0) : spinor(1.0, 0.0); };

  // Superposed input entangled with copies of (a, y) on the reference arms.
  Vector entangled = Vector::Zero(16);
  for (int a = 0; a < 2; ++a)
    for (int y = 0; y < 2; ++y) entangled((a << 3) | (y << 2) | (a << 1) | y) = 0.5;
  const auto superposed =
      hadamard_pbs_gadget(embed_spin_state(4, all, entangled), kUpper, kLower);

  auto sign_of = [&](int p2, int z, int a, int y) -> std::optional<Complex> {
    for (const auto& br : superposed) {
      if (br.p2 != p2 || br.z != z) continue;
      auto amp_for = [&](int aa, int yy) {
        const int out = (aa + yy + z) % 2;
        return br.output.amplitude(spin_basis_key(all, (z << 3) | (out << 2) | (aa << 1) | yy));
      };
      const Complex ref = amp_for(0, 0);
      if (std::abs(ref) < 1e-12) return std::nullopt;
      return amp_for(a, y) / ref;
    }
    return std::nullopt;
  };

  std::vector<HadamardPbsRow> rows;
  for (int a = 0; a < 2; ++a) {
    for (int y = 0; y < 2; ++y) {
      const auto branches =
          hadamard_pbs_gadget(embed_spin_state(2, pair, kron(basis(a), basis(y))), kUpper, kLower);
      for (int p2 = 0; p2 < 2; ++p2) {
        for (int z = 0; z < 2; ++z) {
          HadamardPbsRow row{a, y, p2, z};
          row.expected_bit = (a + y + z) % 2;
          row.expected_sign = ((p2 + 1) * a) % 2 ? -1 : 1;
          for (const auto& br : branches) {
            if (br.p2 != p2 || br.z != z) continue;
            row.probability = br.probability;
            for (int bit = 0; bit < 2; ++bit)
              if (spin_fidelity(br.output, lower, basis(bit)) >= 1.0 - 1e-9) row.out_bit = bit;
          }
          const auto sign = sign_of(p2, z, a, y);
          if (sign) row.phase = sign->real();
          row.match = row.out_bit == row.expected_bit && sign &&
                      std::abs(*sign - Complex(row.expected_sign)) <= 1e-9 &&
                      std::abs(row.probability - 0.25) <= 1e-9;
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Teleportation

std::string to_string(PauliWord w) {
  switch (w) {
    case PauliWord::identity: return "I";
    case PauliWord::x: return "X";
    case PauliWord::z: return "Z";
    case PauliWord::xz: return "XZ";
  }
  return "?";
}

Matrix2 pauli_matrix(PauliWord w) {
  switch (w) {
    case PauliWord::identity: return pauli::identity();
    case PauliWord::x: return pauli::x();
    case PauliWord::z: return pauli::z();
    case PauliWord::xz: return pauli::x() * pauli::z();
  }
  return pauli::identity();
}

std::vector<TeleportBranch> teleport(const FockState& state, int source_arm, int pair_arm_1,
                                     int pair_arm_2, const TeleportTable& table) {
  require_distinct({source_arm, pair_arm_1, pair_arm_2});
  require_single_occupancy(state, pair_arm_2, "teleport output");
  std::vector<TeleportBranch> out;
  for (auto& br : bell_analyzer(state, source_arm, pair_arm_1)) {
    const PauliWord w = table[static_cast<std::size_t>(br.outcome.B)];
    out.push_back({br.outcome.B, br.probability, w,
                   spin_rotation(br.post_state, pair_arm_2, pauli_matrix(w))});
  }
  return out;
}

TeleportTable derive_teleport_corrections(int resource_bell) {
  constexpr int kSource = 1, kPair1 = 2, kPair2 = 3;
  const int out_arm[] = {kPair2};
  const double h = 1.0 / std::sqrt(2.0);
  const Vector probes[] = {spinor(1.0, 0.0), spinor(h, h)};
  const PauliWord words[] = {PauliWord::identity, PauliWord::x, PauliWord::z, PauliWord::xz};

  // worst[B][word] = minimum fidelity over probe states
  std::array<std::array<double, 4>, 4> worst{};
  for (auto& row : worst) row.fill(1.0);
  std::array<bool, 4> seen{};
  for (const auto& probe : probes) {
    const FockState input = prepare_bell(
        prepare_spin(vacuum(3), kSource, probe(0), probe(1)), resource_bell, kPair1, kPair2);
    for (const auto& br : bell_analyzer(input, kSource, kPair1)) {
      const auto B = static_cast<std::size_t>(br.outcome.B);
      seen[B] = true;
      for (std::size_t w = 0; w < 4; ++w) {
        const FockState corrected = spin_rotation(br.post_state, kPair2, pauli_matrix(words[w]));
        worst[B][w] = std::min(worst[B][w], spin_fidelity(corrected, out_arm, probe));
      }
    }
  }
  TeleportTable table{};
  for (std::size_t B = 0; B < 4; ++B) {
    if (!seen[B]) throw std::logic_error("Bell outcome never observed while deriving table");
    const auto best = std::max_element(worst[B].begin(), worst[B].end());
    table[B] = words[best - worst[B].begin()];
  }
  return table;
}

}  // namespace feqc
