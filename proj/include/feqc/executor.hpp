// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "feqc/circuit.hpp"
#include "feqc/measurement.hpp"

namespace feqc {

/// Measurement outcomes along one path, in program order.
using OutcomeList = std::vector<std::pair<std::string, int>>;

/// "p1=1,p2=0"; "-" for a path without measurements.
std::string outcome_signature(const OutcomeList& outcomes);

/// Value of `label` in `outcomes`, if it was measured.
std::optional<int> find_outcome(const OutcomeList& outcomes, const std::string& label);

struct BranchRecord {
  OutcomeList outcomes;
  double probability = 0.0;
  FockState post_state;
};

/// Runs one measurement instruction on a Fock state.
std::vector<MeasurementOutcome> measure(const FockState& state, const Measure& m);

/// Depth-first expansion of every measurement into its nonzero branches.
/// Branches come out in lexicographic order of outcome values.
std::vector<BranchRecord> enumerate_branches(const Circuit& circuit, const FockState& input);

struct ShotRecord {
  OutcomeList outcomes;
};

struct SampleResult {
  std::uint64_t seed = 0;
  std::vector<ShotRecord> shots;
  /// outcome signature -> count, ordered by signature
  std::map<std::string, std::uint64_t> frequencies;
  /// Exact branch records for every path reachable by sampling.
  std::vector<BranchRecord> branches;
};

/// Draws `shots` paths through the branch tree. Shot s uses draws
/// (seed, stream = s, counter = measurement depth).
SampleResult sample(const Circuit& circuit, const FockState& input, std::uint64_t seed,
                    std::uint64_t shots);

}  // namespace feqc
