// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "feqc/circuit.hpp"
#include "feqc/executor.hpp"
#include "feqc/gadgets.hpp"

namespace feqc {

using Json = nlohmann::ordered_json;

inline constexpr int kReportVersion = 1;

enum class Backend { fock, corr };
enum class RunMode { enumerate, sample };

struct RunOptions {
  Backend backend = Backend::fock;
  RunMode mode = RunMode::enumerate;
  std::uint64_t shots = 1000;
  std::uint64_t seed = 0;
  bool emit_state = false;
};

struct ReportBranch {
  OutcomeList outcomes;
  double probability = 0.0;
  std::optional<FockState> state;
};

struct RunReport {
  RunMode mode = RunMode::enumerate;
  Backend backend = Backend::fock;
  std::uint64_t seed = 0;
  int arm_count = 0;
  std::vector<ReportBranch> branches;
  std::optional<std::map<std::string, std::uint64_t>> frequencies;
  struct CorrCounters {
    std::uint64_t terms = 0;
    double wall_ms = 0.0;
  };
  std::optional<CorrCounters> corr;
};

/// Runs a circuit from the vacuum on the chosen backend.
RunReport run(const Circuit& circuit, const RunOptions& options);

/// Report JSON: {version, backend, mode, seed, arm_count, branches:[{outcomes,
/// probability, state?}], frequencies?, corr?}.
Json to_json(const RunReport& report);

Json state_to_json(const FockState& state);

// ---------------------------------------------------------------------------
// Prebuilt gadget commands

struct GadgetOptions {
  int bell_input = 0;
  DetectorMode detector = DetectorMode::parity;
  /// Encoder and teleport input qubit.
  std::pair<Complex, Complex> qubit{1.0, 0.0};
  /// CNOT inputs.
  std::pair<Complex, Complex> control{1.0, 0.0};
  std::pair<Complex, Complex> target{1.0, 0.0};
  bool correction = true;
  bool emit_state = false;
};

inline const std::vector<std::string> kGadgetNames = {"bell", "encoder", "cnot", "teleport",
                                                      "appendix-table"};

/// Builds the gadget, runs every branch, and reports per-branch fidelity
/// against the ideal output plus the aggregate success probability.
Json gadget_report(const std::string& name, const GadgetOptions& options);

}  // namespace feqc
