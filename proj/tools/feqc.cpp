// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

// feqc: run circuit files and prebuilt gadgets.
//
//   feqc run <file> [--backend fock|corr] [--mode enumerate|sample]
//                   [--shots N] [--seed S] [--emit-state] [--json|--pretty]
//   feqc gadget <name> [options]
//
// Exit codes: 0 success, 2 parse/validation error, 1 runtime error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "feqc/dsl.hpp"
#include "feqc/errors.hpp"
#include "feqc/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitParse = 2;

void emit(const feqc::Json& j, bool pretty) {
  std::cout << (pretty ? j.dump(2) : j.dump()) << '\n';
}

// Accepts "0", "1" or a spinor "(re,im),(re,im)".
std::pair<feqc::Complex, feqc::Complex> qubit_option(const std::string& text,
                                                     const std::string& flag) {
  if (text == "0") return {1.0, 0.0};
  if (text == "1") return {0.0, 1.0};
  auto s = feqc::dsl::parse_spinor(text);
  if (!s || std::norm(s->first) + std::norm(s->second) == 0.0) {
    throw CLI::ValidationError(flag, "expected 0, 1 or \"(re,im),(re,im)\"");
  }
  return *s;
}

int run_file(const std::string& path, const feqc::RunOptions& options, bool pretty) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << path << ": cannot open file\n";
    return kExitRuntime;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto parsed = feqc::dsl::parse(buffer.str());
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics) std::cerr << d.format(path) << '\n';
    return kExitParse;
  }
  emit(feqc::to_json(feqc::run(*parsed.circuit, options)), pretty);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-electron circuit simulator"};
  app.require_subcommand(1);

  feqc::RunOptions run_options;
  std::string file;
  std::string backend = "fock";
  std::string mode = "enumerate";
  bool pretty = false;
  auto* run_cmd = app.add_subcommand("run", "Run a .feqc circuit file");
  run_cmd->add_option("file", file, "Circuit file")->required();
  run_cmd->add_option("--backend", backend, "fock or corr")
      ->check(CLI::IsMember({"fock", "corr"}));
  run_cmd->add_option("--mode", mode, "enumerate or sample")
      ->check(CLI::IsMember({"enumerate", "sample"}));
  run_cmd->add_option("--shots", run_options.shots, "Shots in sample mode")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run_options.seed, "Sampler seed");
  run_cmd->add_flag("--emit-state", run_options.emit_state, "Include final amplitudes");
  auto* json_flag = run_cmd->add_flag("--json", "Compact JSON (default)");
  run_cmd->add_flag("--pretty", pretty, "Indented JSON")->excludes(json_flag);

  std::string gadget;
  feqc::GadgetOptions gadget_options;
  std::string detector = "parity";
  std::string qubit = "0", control = "0", target = "0";
  bool no_correction = false;
  bool gadget_pretty = false;
  auto* gadget_cmd = app.add_subcommand("gadget", "Run a prebuilt gadget");
  gadget_cmd->add_option("name", gadget, "bell, encoder, cnot, teleport or appendix-table")
      ->required()
      ->check(CLI::IsMember(feqc::kGadgetNames));
  gadget_cmd->add_option("--input", gadget_options.bell_input, "Bell state index for 'bell'")
      ->check(CLI::Range(0, 3));
  gadget_cmd->add_option("--detector", detector, "charge or parity")
      ->check(CLI::IsMember({"charge", "parity"}));
  gadget_cmd->add_option("--qubit", qubit, "Input qubit for encoder/teleport");
  gadget_cmd->add_option("--control", control, "CNOT control: 0, 1 or spinor");
  gadget_cmd->add_option("--target", target, "CNOT target: 0, 1 or spinor");
  gadget_cmd->add_flag("--no-correction", no_correction, "Skip the encoder spin flip");
  gadget_cmd->add_flag("--emit-state", gadget_options.emit_state, "Include output amplitudes");
  gadget_cmd->add_flag("--pretty", gadget_pretty, "Indented JSON");

  try {
    app.parse(argc, argv);
    if (*run_cmd) {
      run_options.backend = backend == "corr" ? feqc::Backend::corr : feqc::Backend::fock;
      run_options.mode = mode == "sample" ? feqc::RunMode::sample : feqc::RunMode::enumerate;
      return run_file(file, run_options, pretty);
    }
    gadget_options.detector =
        detector == "charge" ? feqc::DetectorMode::charge : feqc::DetectorMode::parity;
    gadget_options.qubit = qubit_option(qubit, "--qubit");
    gadget_options.control = qubit_option(control, "--control");
    gadget_options.target = qubit_option(target, "--target");
    gadget_options.correction = !no_correction;
    emit(feqc::gadget_report(gadget, gadget_options), gadget_pretty);
    return kExitOk;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  } catch (const feqc::CircuitValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
