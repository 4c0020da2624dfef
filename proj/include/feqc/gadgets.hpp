// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "feqc/circuit.hpp"
#include "feqc/executor.hpp"
#include "feqc/spin_register.hpp"

namespace feqc {

/// Electrometer (q = 0, 1, 2) or parity meter (q mod 2).
enum class DetectorMode { charge, parity };

// ---------------------------------------------------------------------------
// Bell-state analyzer
// ---------------------------------------------------------------------------

struct BellOutcome {
  int B = 0;
  /// Parities of the detectors that fired, in order (1 to 3 entries).
  std::vector<int> parities;
};

/// B = p1 + p1 p2 + p1 p2 p3; detectors that never ran count as 0.
int bell_value(std::span<const int> parities);

struct BellBranch {
  BellOutcome outcome;
  double probability = 0.0;
  /// Raw detector readings (q or p) as labelled outcomes.
  OutcomeList detectors;
  FockState post_state;
};

/// Beam splitter + detector, then (if antibunched) sigma_z on arm_b, beam
/// splitter + detector, then (if antibunched) sigma_x on arm_b, beam
/// splitter + detector. Detectors sit on arm_a. With `early_exit` a stage
/// runs only while every earlier detector reported antibunching.
std::vector<BellBranch> bell_analyzer(const FockState& state, int arm_a, int arm_b,
                                      DetectorMode mode = DetectorMode::parity,
                                      bool early_exit = true);

/// Always-run transcription as a circuit (labels p1, p2, p3 or q1, q2, q3).
/// No preparations are included.
Circuit bell_analyzer_circuit(int arm_count, int arm_a, int arm_b,
                              DetectorMode mode = DetectorMode::parity);

/// B for a branch of bell_analyzer_circuit.
int bell_value_from_outcomes(const OutcomeList& outcomes);

// ---------------------------------------------------------------------------
// Encoder / spin-parity readout
// ---------------------------------------------------------------------------

struct EncoderBranch {
  int p = 0;
  double probability = 0.0;
  bool corrected = false;
  /// State after the gadget; arms c, d are arms a, b.
  FockState output;
};

/// PBS(a, b), parity meter on arm a, PBS(a, b); with `apply_correction`,
/// sigma_x on arm b when p = 0.
std::vector<EncoderBranch> encoder(const FockState& state, int arm_a, int arm_b,
                                   bool apply_correction);

/// Encoder without correction: reports the spin parity of the two electrons.
std::vector<EncoderBranch> spin_parity_readout(const FockState& state, int arm_a, int arm_b);

Circuit encoder_circuit(int arm_count, int arm_a, int arm_b, bool apply_correction,
                        const std::string& label = "p");

// ---------------------------------------------------------------------------
// CNOT
// ---------------------------------------------------------------------------

/// Hadamards on both arms, PBS, parity meter on `upper` (p2), PBS,
/// Hadamards on both arms, spin measurement of `upper` (z).
struct HadamardPbsBranch {
  int p2 = 0;
  int z = 0;
  double probability = 0.0;
  FockState output;
};

std::vector<HadamardPbsBranch> hadamard_pbs_gadget(const FockState& state, int upper_arm,
                                                   int lower_arm);

/// Bit carried by the ancilla after the control-side encoder: x + p1 + 1 mod 2.
int control_branch_formula(int x, int p1);

struct AppliedCorrection {
  int arm = 0;
  RotationAxis pauli = RotationAxis::x;
  bool operator==(const AppliedCorrection&) const = default;
};

struct GadgetBranchRecord {
  OutcomeList outcomes;
  std::vector<AppliedCorrection> applied_corrections;
  double probability = 0.0;
  FockState output_state;
};

struct CnotOptions {
  /// Disabling either correction is only meant for ablation tests.
  bool control_correction = true;
  bool target_correction = true;
};

/// sigma_z on the control iff p2 = 0.
bool cnot_needs_control_correction(int p2);
/// sigma_x on the target iff (z = down and p1 = 1) or (z = up and p1 = 0).
bool cnot_needs_target_correction(int p1, int z);

/// Deterministic CNOT built from two encoders with a Hadamard basis change.
/// The ancilla arm must hold (|up> + |down>)/sqrt(2).
std::vector<GadgetBranchRecord> cnot(const FockState& state, int control_arm, int target_arm,
                                     int ancilla_arm, const CnotOptions& options = {});

/// Circuit transcription (labels p1, p2, z). The target correction is
/// written as two conditionals whose sigma_x factors cancel when both fire.
Circuit cnot_circuit(int arm_count, int control_arm, int target_arm, int ancilla_arm);

Matrix cnot_matrix();

// ---------------------------------------------------------------------------
// Hadamard-PBS branch table
// ---------------------------------------------------------------------------

struct HadamardPbsRow {
  int a = 0;
  int y = 0;
  int p2 = 0;
  int z = 0;
  double probability = 0.0;
  int out_bit = -1;       // simulated lower-arm bit (-1 if not a basis state)
  int expected_bit = 0;   // a + y + z mod 2
  double phase = 0.0;     // simulated sign relative to the (a, y) = (0, 0) component
  int expected_sign = 1;  // (-1)^{(p2+1) a}, i.e. the (p2+1)(a+z) exponent relative to a = 0
  bool match = false;
};

/// Runs the Hadamard/PBS gadget on all four basis inputs and on their
/// uniform superposition (entangled with reference arms so relative
/// signs stay observable) and compares with (-1)^{(p2+1)(a+z)} |a+y+z>.
std::vector<HadamardPbsRow> hadamard_pbs_table();

// ---------------------------------------------------------------------------
// Teleportation
// ---------------------------------------------------------------------------

enum class PauliWord { identity, x, z, xz };

std::string to_string(PauliWord w);
/// Matrix of the word; xz means sigma_x * sigma_z (sigma_z applied first).
Matrix2 pauli_matrix(PauliWord w);

using TeleportTable = std::array<PauliWord, 4>;

/// Correction per Bell outcome B for a |Psi_0> resource. Frozen from
/// derive_teleport_corrections().
inline constexpr TeleportTable kTeleportCorrections = {PauliWord::identity, PauliWord::z,
                                                       PauliWord::xz, PauliWord::x};

/// Brute-force search over {I, X, Z, XZ} for each B, using two linearly
/// independent input qubits, against the given resource pair.
TeleportTable derive_teleport_corrections(int resource_bell = 0);

struct TeleportBranch {
  int B = 0;
  double probability = 0.0;
  PauliWord correction = PauliWord::identity;
  FockState output;
};

/// Bell analysis of (source, pair_arm_1), then the B-indexed correction on
/// pair_arm_2.
std::vector<TeleportBranch> teleport(const FockState& state, int source_arm, int pair_arm_1,
                                     int pair_arm_2,
                                     const TeleportTable& table = kTeleportCorrections);

}  // namespace feqc
