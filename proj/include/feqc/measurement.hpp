// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "feqc/fock_state.hpp"

namespace feqc {

/// Branches below this probability are dropped.
inline constexpr double kBranchThreshold = 1e-12;

/// One outcome of a projective measurement with its renormalized
/// (Lüders) post-measurement state.
struct MeasurementOutcome {
  int value = 0;
  double probability = 0.0;
  FockState post_state;
};

/// Electrometer: q in {0, 1, 2} on the arm.
std::vector<MeasurementOutcome> measure_charge(const FockState& state, int arm);

/// Parity meter: q mod 2. The even branch keeps the coherence between the
/// q = 0 and q = 2 components.
std::vector<MeasurementOutcome> measure_parity(const FockState& state, int arm);

/// Spin of the single electron in `arm`: 0 = up, 1 = down.
/// Requires charge exactly 1 on the arm in every key.
std::vector<MeasurementOutcome> measure_spin(const FockState& state, int arm);

/// Occupation n in {0, 1} of a single mode.
std::vector<MeasurementOutcome> measure_occupation(const FockState& state, ModeIndex mode);

/// <P_arm> with P = 1 - (1 - Q)^2, i.e. the probability of charge 1.
double charge1_expectation(const FockState& state, int arm);

}  // namespace feqc
