// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include "feqc/report.hpp"

#include <cmath>
#include <stdexcept>

#include "feqc/corr.hpp"
#include "feqc/optics.hpp"
#include "feqc/rng.hpp"

namespace feqc {

namespace {

RunReport enumerate_fock(const Circuit& circuit, const RunOptions& options) {
  RunReport report;
  for (auto& b : enumerate_branches(circuit, vacuum(circuit.arm_count))) {
    report.branches.push_back({std::move(b.outcomes), b.probability,
                               options.emit_state ? std::optional(std::move(b.post_state))
                                                  : std::nullopt});
  }
  return report;
}

RunReport sample_fock(const Circuit& circuit, const RunOptions& options) {
  RunReport report;
  auto result = sample(circuit, vacuum(circuit.arm_count), options.seed, options.shots);
  for (auto& b : result.branches) {
    report.branches.push_back({std::move(b.outcomes), b.probability,
                               options.emit_state ? std::optional(std::move(b.post_state))
                                                  : std::nullopt});
  }
  report.frequencies = std::move(result.frequencies);
  return report;
}

RunReport run_corr(const Circuit& circuit, const RunOptions& options) {
  RunReport report;
  auto result = corr_enumerate(circuit);
  report.corr = RunReport::CorrCounters{result.terms, result.wall_ms};
  if (options.mode == RunMode::enumerate) {
    for (auto& b : result.branches) report.branches.push_back({std::move(b.outcomes), b.probability, {}});
    return report;
  }
  if (options.shots == 0) throw std::invalid_argument("shots must be at least 1");
  // One categorical draw per shot over the enumerated leaves.
  const CounterRng rng(options.seed);
  std::vector<bool> reached(result.branches.size(), false);
  std::map<std::string, std::uint64_t> frequencies;
  for (std::uint64_t shot = 0; shot < options.shots; ++shot) {
    const double u = rng.uniform(shot, 0);
    double cumulative = 0.0;
    std::size_t pick = result.branches.size() - 1;
    for (std::size_t i = 0; i < result.branches.size(); ++i) {
      cumulative += result.branches[i].probability;
      if (u < cumulative) {
        pick = i;
        break;
      }
    }
    reached[pick] = true;
    ++frequencies[outcome_signature(result.branches[pick].outcomes)];
  }
  for (std::size_t i = 0; i < result.branches.size(); ++i) {
    if (reached[i]) {
      report.branches.push_back({std::move(result.branches[i].outcomes),
                                 result.branches[i].probability, {}});
    }
  }
  report.frequencies = std::move(frequencies);
  return report;
}

Json outcomes_json(const OutcomeList& outcomes) {
  Json j = Json::object();
  for (const auto& [label, value] : outcomes) j[label] = value;
  return j;
}

}  // namespace

RunReport run(const Circuit& circuit, const RunOptions& options) {
  circuit.validate();
  RunReport report;
  if (options.backend == Backend::corr) {
    report = run_corr(circuit, options);
  } else if (options.mode == RunMode::enumerate) {
    report = enumerate_fock(circuit, options);
  } else {
    report = sample_fock(circuit, options);
  }
  report.mode = options.mode;
  report.backend = options.backend;
  report.seed = options.seed;
  report.arm_count = circuit.arm_count;
  return report;
}

Json state_to_json(const FockState& state) {
  Json entries = Json::array();
  for (const auto& [key, amp] : state.amplitudes()) {
    entries.push_back({{"key", key_to_bitstring(key, state.num_arms())},
                       {"re", amp.real()},
                       {"im", amp.imag()}});
  }
  return entries;
}

Json to_json(const RunReport& report) {
  Json j;
  j["version"] = kReportVersion;
  j["backend"] = report.backend == Backend::fock ? "fock" : "corr";
  j["mode"] = report.mode == RunMode::enumerate ? "enumerate" : "sample";
  j["seed"] = report.seed;
  j["arm_count"] = report.arm_count;
  Json branches = Json::array();
  for (const auto& b : report.branches) {
    Json entry;
    entry["outcomes"] = outcomes_json(b.outcomes);
    entry["probability"] = b.probability;
    if (b.state) entry["state"] = state_to_json(*b.state);
    branches.push_back(std::move(entry));
  }
  j["branches"] = std::move(branches);
  if (report.frequencies) {
    Json f = Json::object();
    for (const auto& [sig, count] : *report.frequencies) f[sig] = count;
    j["frequencies"] = std::move(f);
  }
  if (report.corr) j["corr"] = {{"terms", report.corr->terms}, {"wall_ms", report.corr->wall_ms}};
  return j;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kBitTolerance = 1e-9;

Json corrections_json(const std::vector<AppliedCorrection>& corrections) {
  Json out = Json::array();
  static const char* names[] = {"X", "Y", "Z", "H"};
  for (const auto& c : corrections) {
    out.push_back(std::string(names[static_cast<int>(c.pauli)]) + "@" + std::to_string(c.arm));
  }
  return out;
}

/// Basis bit of a singly occupied arm, if its spin is definite.
std::optional<int> basis_bit(const FockState& state, int arm) {
  const int arms[] = {arm};
  if (spin_fidelity(state, arms, spinor(1.0, 0.0)) >= 1.0 - kBitTolerance) return 0;
  if (spin_fidelity(state, arms, spinor(0.0, 1.0)) >= 1.0 - kBitTolerance) return 1;
  return std::nullopt;
}

Json with_header(const std::string& name) {
  Json j;
  j["version"] = kReportVersion;
  j["gadget"] = name;
  return j;
}

Json bell_report(const GadgetOptions& o) {
  if (o.bell_input < 0 || o.bell_input > 3) throw std::invalid_argument("--input must be 0..3");
  Json j = with_header("bell");
  j["input"] = o.bell_input;
  j["detector"] = o.detector == DetectorMode::charge ? "charge" : "parity";
  const FockState input = prepare_bell(vacuum(2), o.bell_input, 1, 2);
  Json branches = Json::array();
  double success = 0.0;
  for (const auto& br : bell_analyzer(input, 1, 2, o.detector)) {
    Json entry;
    entry["outcomes"] = outcomes_json(br.detectors);
    entry["B"] = br.outcome.B;
    entry["probability"] = br.probability;
    if (o.emit_state) entry["state"] = state_to_json(br.post_state);
    if (br.outcome.B == o.bell_input) success += br.probability;
    branches.push_back(std::move(entry));
  }
  j["branches"] = std::move(branches);
  j["success_probability"] = success;
  return j;
}

Json encoder_report(const GadgetOptions& o) {
  Json j = with_header("encoder");
  j["correction"] = o.correction;
  const auto [alpha, beta] = o.qubit;
  const FockState input = prepare_spin(prepare_spin(vacuum(2), 1, alpha, beta), 2, 1.0, 1.0);
  Vector ideal = Vector::Zero(4);
  ideal(0) = alpha;
  ideal(3) = beta;
  const int arms[] = {1, 2};
  Json branches = Json::array();
  double success = 0.0;
  for (const auto& br : encoder(input, 1, 2, o.correction)) {
    const double f = spin_fidelity(br.output, arms, ideal);
    Json entry;
    entry["outcomes"] = {{"p", br.p}};
    entry["probability"] = br.probability;
    entry["corrections"] = br.corrected ? Json::array({"X@2"}) : Json::array();
    entry["fidelity"] = f;
    if (o.emit_state) entry["state"] = state_to_json(br.output);
    success += br.probability * f;
    branches.push_back(std::move(entry));
  }
  j["branches"] = std::move(branches);
  j["success_probability"] = success;
  return j;
}

Json cnot_report(const GadgetOptions& o) {
  constexpr int kControl = 1, kAncilla = 2, kTarget = 3;
  Json j = with_header("cnot");
  const Vector control = spinor(o.control.first, o.control.second).normalized();
  const Vector target = spinor(o.target.first, o.target.second).normalized();
  const double h = 1.0 / std::sqrt(2.0);
  const int all[] = {kControl, kAncilla, kTarget};
  const int pair[] = {kControl, kTarget};
  const FockState input = embed_spin_state(3, all, kron(kron(control, spinor(h, h)), target));
  const Vector ideal = cnot_matrix() * kron(control, target);
  Json branches = Json::array();
  double success = 0.0;
  for (const auto& br : cnot(input, kControl, kTarget, kAncilla)) {
    const double f = spin_fidelity(br.output_state, pair, ideal);
    Json entry;
    entry["outcomes"] = outcomes_json(br.outcomes);
    entry["probability"] = br.probability;
    entry["corrections"] = corrections_json(br.applied_corrections);
    entry["fidelity"] = f;
    const auto bc = basis_bit(br.output_state, kControl);
    const auto bt = basis_bit(br.output_state, kTarget);
    if (bc && bt) entry["output"] = {*bc, *bt};
    if (o.emit_state) entry["state"] = state_to_json(br.output_state);
    success += br.probability * f;
    branches.push_back(std::move(entry));
  }
  j["branches"] = std::move(branches);
  j["success_probability"] = success;
  return j;
}

Json teleport_report(const GadgetOptions& o) {
  constexpr int kSource = 1, kPair1 = 2, kPair2 = 3;
  Json j = with_header("teleport");
  const auto [alpha, beta] = o.qubit;
  const FockState input =
      prepare_bell(prepare_spin(vacuum(3), kSource, alpha, beta), 0, kPair1, kPair2);
  const int out_arm[] = {kPair2};
  const Vector ideal = spinor(alpha, beta);
  Json branches = Json::array();
  double success = 0.0;
  for (const auto& br : teleport(input, kSource, kPair1, kPair2)) {
    const double f = spin_fidelity(br.output, out_arm, ideal);
    Json entry;
    entry["outcomes"] = {{"B", br.B}};
    entry["probability"] = br.probability;
    entry["correction"] = to_string(br.correction);
    entry["fidelity"] = f;
    if (o.emit_state) entry["state"] = state_to_json(br.output);
    success += br.probability * f;
    branches.push_back(std::move(entry));
  }
  j["branches"] = std::move(branches);
  j["success_probability"] = success;
  return j;
}

Json branch_table_report() {
  Json j = with_header("appendix-table");
  Json rows = Json::array();
  bool all = true;
  for (const auto& r : hadamard_pbs_table()) {
    rows.push_back({{"a", r.a},
                    {"y", r.y},
                    {"p2", r.p2},
                    {"z", r.z},
                    {"probability", r.probability},
                    {"out_bit", r.out_bit},
                    {"expected_bit", r.expected_bit},
                    {"phase", r.phase},
                    {"expected_sign", r.expected_sign},
                    {"match", r.match}});
    all = all && r.match;
  }
  j["rows"] = std::move(rows);
  j["all_match"] = all;
  return j;
}

}  // namespace

Json gadget_report(const std::string& name, const GadgetOptions& options) {
  if (name == "bell") return bell_report(options);
  if (name == "encoder") return encoder_report(options);
  if (name == "cnot") return cnot_report(options);
  if (name == "teleport") return teleport_report(options);
  if (name == "appendix-table") return branch_table_report();
  throw std::invalid_argument("unknown gadget '" + name + "'");
}

}  // namespace feqc
