// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "feqc/circuit.hpp"

namespace feqc::dsl {

// Diagnostic codes. Each malformed construct maps to exactly one code.
inline constexpr std::string_view kUnknownKeyword = "E001";
inline constexpr std::string_view kArity = "E002";
inline constexpr std::string_view kLabelRedefined = "E003";
inline constexpr std::string_view kForwardReference = "E004";
inline constexpr std::string_view kUndefinedLabel = "E005";
inline constexpr std::string_view kArmOutOfRange = "E006";
inline constexpr std::string_view kDuplicateArm = "E007";
inline constexpr std::string_view kBadNumber = "E008";
inline constexpr std::string_view kBadValue = "E009";
inline constexpr std::string_view kMissingArms = "E010";
inline constexpr std::string_view kArmsRedefined = "E011";
inline constexpr std::string_view kAlreadyPrepared = "E012";
inline constexpr std::string_view kSyntax = "E013";

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string code;
  std::string message;

  /// "<file>:<line>:<col>: error[E00x]: message"
  std::string format(std::string_view file) const;
};

struct ParseResult {
  std::optional<Circuit> circuit;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return circuit.has_value(); }
};

/// Parses the line-oriented circuit language:
///
///   arms <N>
///   electron <arm> up|down|plus | electron <arm> (<re>,<im>) (<re>,<im>)
///   bell <k> <arm_a> <arm_b>
///   bs <i> <j> | pbs <i> <j> | swap <i> <j> | rot <arm> x|y|z|h
///   <label> = charge <arm> | parity <arm> | spin <arm> | occ <arm> up|down
///   if <label> == <int> : <gate>
///
/// '#' starts a comment. Every line is checked even after an error.
ParseResult parse(std::string_view source);

/// Canonical text for a circuit; parse(print(c)) == c. Throws
/// std::invalid_argument for custom gates, which have no textual form.
std::string print(const Circuit& circuit);

/// "(re,im),(re,im)" or "(re,im) (re,im)".
std::optional<std::pair<Complex, Complex>> parse_spinor(std::string_view text);

}  // namespace feqc::dsl
