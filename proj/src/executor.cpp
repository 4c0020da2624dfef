// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include "feqc/executor.hpp"

#include <memory>
#include <stdexcept>

#include "feqc/rng.hpp"

namespace feqc {

std::string outcome_signature(const OutcomeList& outcomes) {
  if (outcomes.empty()) return "-";
  std::string sig;
  for (const auto& [label, value] : outcomes) {
    if (!sig.empty()) sig += ',';
    sig += label + "=" + std::to_string(value);
  }
  return sig;
}

std::optional<int> find_outcome(const OutcomeList& outcomes, const std::string& label) {
  for (const auto& [l, v] : outcomes)
    if (l == label) return v;
  return std::nullopt;
}

std::vector<MeasurementOutcome> measure(const FockState& state, const Measure& m) {
  switch (m.kind) {
    case MeasureKind::charge: return measure_charge(state, m.arm);
    case MeasureKind::parity: return measure_parity(state, m.arm);
    case MeasureKind::spin: return measure_spin(state, m.arm);
    case MeasureKind::occupation: return measure_occupation(state, {m.arm, m.spin});
  }
  return {};
}

namespace {

// Branch tree: interior nodes are measurements, leaves index into the
// flattened branch list.
struct Node {
  struct Child {
    int value;
    double probability;  // conditional on reaching this node
    std::unique_ptr<Node> node;
  };
  std::string label;
  std::vector<Child> children;
  std::size_t leaf = 0;
};

class TreeBuilder {
 public:
  explicit TreeBuilder(const Circuit& circuit) : circuit_(circuit) {}

  std::unique_ptr<Node> build(FockState state, std::size_t pc, OutcomeList outcomes,
                              double probability) {
    auto node = std::make_unique<Node>();
    for (; pc < circuit_.instructions.size(); ++pc) {
      const auto& ins = circuit_.instructions[pc];
      if (const auto* g = std::get_if<Gate>(&ins)) {
        state = apply_gate(state, *g);
      } else if (const auto* c = std::get_if<Conditional>(&ins)) {
        if (find_outcome(outcomes, c->label) == c->value) state = apply_gate(state, c->gate);
      } else if (const auto* m = std::get_if<Measure>(&ins)) {
        node->label = m->label;
        for (auto& o : measure(state, *m)) {
          OutcomeList next = outcomes;
          next.emplace_back(m->label, o.value);
          node->children.push_back({o.value, o.probability,
                                    build(std::move(o.post_state), pc + 1, std::move(next),
                                          probability * o.probability)});
        }
        return node;
      } else {
        state = apply_prep(state, ins);
      }
    }
    node->leaf = branches.size();
    branches.push_back({std::move(outcomes), probability, std::move(state)});
    return node;
  }

  std::vector<BranchRecord> branches;

 private:
  const Circuit& circuit_;
};

void check_input(const Circuit& circuit, const FockState& input) {
  circuit.validate();
  if (input.num_arms() != circuit.arm_count) {
    throw std::invalid_argument("input state arm count does not match circuit");
  }
}

}  // namespace

std::vector<BranchRecord> enumerate_branches(const Circuit& circuit, const FockState& input) {
  check_input(circuit, input);
  TreeBuilder builder(circuit);
  builder.build(input, 0, {}, 1.0);
  return std::move(builder.branches);
}

SampleResult sample(const Circuit& circuit, const FockState& input, std::uint64_t seed,
                    std::uint64_t shots) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  check_input(circuit, input);
  TreeBuilder builder(circuit);
  const auto root = builder.build(input, 0, {}, 1.0);

  const CounterRng rng(seed);
  SampleResult result;
  result.seed = seed;
  result.shots.reserve(shots);
  std::vector<bool> reached(builder.branches.size(), false);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    ShotRecord record;
    const Node* node = root.get();
    std::uint64_t depth = 0;
    while (!node->children.empty()) {
      const double u = rng.uniform(shot, depth++);
      double cumulative = 0.0;
      const Node::Child* pick = &node->children.back();
      for (const auto& child : node->children) {
        cumulative += child.probability;
        if (u < cumulative) {
          pick = &child;
          break;
        }
      }
      record.outcomes.emplace_back(node->label, pick->value);
      node = pick->node.get();
    }
    reached[node->leaf] = true;
    ++result.frequencies[outcome_signature(record.outcomes)];
    result.shots.push_back(std::move(record));
  }
  for (std::size_t i = 0; i < builder.branches.size(); ++i)
    if (reached[i]) result.branches.push_back(std::move(builder.branches[i]));
  return result;
}

}  // namespace feqc
