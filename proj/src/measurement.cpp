// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include "feqc/measurement.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "feqc/errors.hpp"

namespace feqc {
namespace {

// Partitions the keys by `classify` and returns the nonzero-probability
// projections in increasing outcome order.
std::vector<MeasurementOutcome> project(const FockState& state,
                                        const std::function<int(OccupationKey)>& classify) {
  std::map<int, FockState> parts;
  for (const auto& [key, amp] : state.amplitudes()) {
    auto it = parts.try_emplace(classify(key), state.num_arms()).first;
    it->second.accumulate(key, amp);
  }
  const double total = state.norm_squared();
  std::vector<MeasurementOutcome> out;
  for (auto& [value, part] : parts) {
    const double p = part.norm_squared() / total;
    if (p <= kBranchThreshold) continue;
    part.normalize();
    out.push_back({value, p, std::move(part)});
  }
  // Renormalize over the surviving branches.
  double kept = 0.0;
  for (const auto& o : out) kept += o.probability;
  for (auto& o : out) o.probability /= kept;
  return out;
}

}  // namespace

std::vector<MeasurementOutcome> measure_charge(const FockState& state, int arm) {
  state.check_arm(arm);
  return project(state, [arm](OccupationKey key) { return arm_charge(key, arm); });
}

std::vector<MeasurementOutcome> measure_parity(const FockState& state, int arm) {
  state.check_arm(arm);
  return project(state, [arm](OccupationKey key) { return arm_charge(key, arm) % 2; });
}

std::vector<MeasurementOutcome> measure_spin(const FockState& state, int arm) {
  state.check_arm(arm);
  for (const auto& [key, amp] : state.amplitudes()) {
    if (arm_charge(key, arm) != 1) {
      throw PreconditionViolation("spin measurement on arm " + std::to_string(arm) +
                                  " requires exactly one electron there");
    }
  }
  const OccupationKey down_bit = mode_bit(down(arm));
  return project(state, [down_bit](OccupationKey key) { return (key & down_bit) ? 1 : 0; });
}

std::vector<MeasurementOutcome> measure_occupation(const FockState& state, ModeIndex mode) {
  state.check_mode(mode);
  const OccupationKey bit = mode_bit(mode);
  return project(state, [bit](OccupationKey key) { return (key & bit) ? 1 : 0; });
}

double charge1_expectation(const FockState& state, int arm) {
  state.check_arm(arm);
  double p = 0.0;
  for (const auto& [key, amp] : state.amplitudes()) {
    if (arm_charge(key, arm) == 1) p += std::norm(amp);
  }
  return p / state.norm_squared();
}

}  // namespace feqc
