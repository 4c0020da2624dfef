// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <random>

#include "feqc/errors.hpp"
#include "feqc/executor.hpp"
#include "feqc/gadgets.hpp"
#include "feqc/measurement.hpp"
#include "feqc/optics.hpp"
#include "feqc/spin_register.hpp"
#include "test_util.hpp"

using namespace feqc;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

FockState bell(int k) { return prepare_bell(vacuum(2), k, 1, 2); }

FockState superpose(const FockState& a, const FockState& b) {
  FockState s = a;
  for (const auto& [k, v] : b.amplitudes()) s.accumulate(k, v);
  s.prune();
  s.normalize();
  return s;
}

std::map<int, double> b_distribution(const std::vector<BellBranch>& branches) {
  std::map<int, double> d;
  for (const auto& b : branches) d[b.outcome.B] += b.probability;
  return d;
}

Vector basis(int x) { return x ? spinor(0.0, 1.0) : spinor(1.0, 0.0); }

// Control on arm 1, ancilla |+> on arm 2, target on arm 3.
FockState cnot_input(const Vector& two_qubit) {
  const std::array<int, 3> arms{1, 3, 2};
  return embed_spin_state(3, arms, kron(two_qubit, spinor(kH, kH)));
}

double worst_cnot_fidelity(const Vector& psi, const CnotOptions& options) {
  const std::array<int, 2> pair{1, 3};
  const Vector ideal = cnot_matrix() * psi;
  double worst = 1.0;
  for (const auto& br : cnot(cnot_input(psi), 1, 3, 2, options))
    worst = std::min(worst, spin_fidelity(br.output_state, pair, ideal));
  return worst;
}

}  // namespace

TEST_CASE("bell_value") {
  const std::vector<std::vector<int>> cases = {{0}, {1, 0}, {1, 1, 0}, {1, 1, 1}};
  for (int k = 0; k < 4; ++k) CHECK(bell_value(cases[k]) == k);
}

TEST_CASE("bell analyzer identifies each Bell state") {
  for (auto mode : {DetectorMode::charge, DetectorMode::parity})
    for (bool early : {true, false})
      for (int k = 0; k < 4; ++k) {
        const auto d = b_distribution(bell_analyzer(bell(k), 1, 2, mode, early));
        REQUIRE(d.size() == 1);
        CHECK(d.begin()->first == k);
        CHECK(std::abs(d.begin()->second - 1.0) <= 1e-9);
      }
  const auto b3 = bell_analyzer(bell(3), 1, 2);
  REQUIRE(b3.size() == 1);
  CHECK(b3[0].outcome.parities == std::vector<int>{1, 1, 1});
}

TEST_CASE("bell analyzer on a superposition") {
  const auto d = b_distribution(bell_analyzer(superpose(bell(0), bell(2)), 1, 2));
  REQUIRE(d.size() == 2);
  CHECK(std::abs(d.at(0) - 0.5) < 1e-9);
  CHECK(std::abs(d.at(2) - 0.5) < 1e-9);
}

TEST_CASE("electrometer and parity meter agree on random spin states") {
  std::mt19937_64 rng(41);
  const std::array<int, 2> arms{1, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const FockState s = embed_spin_state(2, arms, testutil::haar_state(rng, 4));
    const auto c = b_distribution(bell_analyzer(s, 1, 2, DetectorMode::charge));
    const auto p = b_distribution(bell_analyzer(s, 1, 2, DetectorMode::parity));
    for (int k = 0; k < 4; ++k) {
      const double x = c.count(k) ? c.at(k) : 0.0;
      const double y = p.count(k) ? p.at(k) : 0.0;
      CHECK(std::abs(x - y) <= 1e-9);
    }
  }
}

TEST_CASE("bell analyzer circuit matches the gadget") {
  for (auto mode : {DetectorMode::charge, DetectorMode::parity})
    for (int k = 0; k < 4; ++k) {
      Circuit c = bell_analyzer_circuit(2, 1, 2, mode);
      c.instructions.insert(c.instructions.begin(), PrepBell{k, 1, 2});
      const auto branches = enumerate_branches(c, vacuum(2));
      double pk = 0.0;
      for (const auto& b : branches)
        if (bell_value_from_outcomes(b.outcomes) == k) pk += b.probability;
      CHECK(std::abs(pk - 1.0) <= 1e-9);
    }
  Circuit c = bell_analyzer_circuit(2, 1, 2);
  c.instructions.insert(c.instructions.begin(), PrepBell{2, 1, 2});
  const auto branches = enumerate_branches(c, vacuum(2));
  REQUIRE(branches.size() == 1);
  CHECK(outcome_signature(branches[0].outcomes) == "p1=1,p2=1,p3=0");
}

TEST_CASE("encoder") {
  const std::array<int, 2> arms{1, 2};
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector q = testutil::haar_state(rng, 2);
    FockState in = prepare_spin(vacuum(2), 1, q(0), q(1));
    in = prepare_spin(in, 2, 1.0, 1.0);
    Vector target = Vector::Zero(4);
    target(0) = q(0);
    target(3) = q(1);
    const auto branches = encoder(in, 1, 2, true);
    REQUIRE(branches.size() == 2);
    for (const auto& b : branches) {
      CHECK(std::abs(b.probability - 0.5) <= 1e-9);
      CHECK(spin_fidelity(b.output, arms, target) >= 1.0 - 1e-9);
      CHECK(b.corrected == (b.p == 0));
    }

    Vector flipped = Vector::Zero(4);
    flipped(1) = q(0);
    flipped(2) = q(1);
    for (const auto& b : encoder(in, 1, 2, false)) {
      const Vector& want = b.p == 0 ? flipped : target;
      CHECK(spin_fidelity(b.output, arms, want) >= 1.0 - 1e-9);
    }
  }
  FockState up_in = prepare_spin(prepare_spin(vacuum(2), 1, 1.0, 0.0), 2, 1.0, 1.0);
  for (const auto& b : encoder(up_in, 1, 2, true))
    CHECK(spin_fidelity(b.output, arms, kron(spinor(1.0, 0.0), spinor(1.0, 0.0))) > 1.0 - 1e-9);
  CHECK_THROWS_AS(encoder(vacuum(2), 1, 2, true), PreconditionViolation);
}

TEST_CASE("encoder decoding identity") {
  const std::array<int, 1> c_arm{1};
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector q = testutil::haar_state(rng, 2);
    const FockState in = prepare_spin(prepare_spin(vacuum(2), 1, q(0), q(1)), 2, 1.0, 1.0);
    for (const auto& b : encoder(in, 1, 2, true)) {
      // projecting d onto |+> is a Hadamard followed by the spin-up outcome
      const auto outs = measure_spin(spin_rotation(b.output, 2, pauli::hadamard()), 2);
      bool found = false;
      for (const auto& o : outs) {
        if (o.value != 0) continue;
        found = true;
        CHECK(std::abs(o.probability - 0.5) < 1e-9);
        CHECK(spin_fidelity(o.post_state, c_arm, q) >= 1.0 - 1e-9);
      }
      CHECK(found);
    }
  }
}

TEST_CASE("spin parity readout") {
  const auto aligned = spin_parity_readout(prepare_bell(vacuum(2), 2, 1, 2), 1, 2);
  FockState uu = prepare_spin(prepare_spin(vacuum(2), 1, 1.0, 0.0), 2, 1.0, 0.0);
  auto r = spin_parity_readout(uu, 1, 2);
  REQUIRE(r.size() == 1);
  CHECK(r[0].p == 1);
  CHECK(fidelity(r[0].output, uu) > 1.0 - 1e-12);

  FockState ud = prepare_spin(prepare_spin(vacuum(2), 1, 1.0, 0.0), 2, 0.0, 1.0);
  r = spin_parity_readout(ud, 1, 2);
  REQUIRE(r.size() == 1);
  CHECK(r[0].p == 0);
  CHECK(fidelity(r[0].output, ud) > 1.0 - 1e-12);

  r = spin_parity_readout(bell(0), 1, 2);
  REQUIRE(r.size() == 1);
  CHECK(r[0].p == 0);
  CHECK(std::abs(r[0].probability - 1.0) < 1e-12);
  REQUIRE(aligned.size() == 1);
  CHECK(aligned[0].p == 1);
}

TEST_CASE("control branch formula") {
  CHECK(control_branch_formula(0, 1) == 0);
  CHECK(control_branch_formula(1, 1) == 1);
  CHECK(control_branch_formula(0, 0) == 1);
  CHECK(control_branch_formula(1, 0) == 0);
}

TEST_CASE("cnot on basis inputs") {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const Vector psi = kron(basis(x), basis(y));
      const auto branches = cnot(cnot_input(psi), 1, 3, 2);
      REQUIRE(branches.size() == 8);
      double total = 0.0;
      const std::array<int, 1> t{3}, c{1};
      for (const auto& b : branches) {
        total += b.probability;
        CHECK(std::abs(b.probability - 0.125) < 1e-9);
        CHECK(spin_fidelity(b.output_state, c, basis(x)) > 1.0 - 1e-9);
        CHECK(spin_fidelity(b.output_state, t, basis((x + y) % 2)) > 1.0 - 1e-9);
      }
      CHECK(std::abs(total - 1.0) < 1e-9);
    }
}

TEST_CASE("cnot produces a Bell state from a superposed control") {
  const Vector psi = kron(spinor(kH, kH), basis(0));
  CHECK(worst_cnot_fidelity(psi, {}) >= 1.0 - 1e-9);
}

TEST_CASE("cnot on random two-qubit inputs") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(worst_cnot_fidelity(testutil::haar_state(rng, 4), {}) >= 1.0 - 1e-9);
}

TEST_CASE("cnot corrections depend only on outcomes") {
  std::mt19937_64 rng(78);
  std::map<std::string, std::vector<AppliedCorrection>> seen;
  for (int trial = 0; trial < 8; ++trial) {
    const Vector psi = testutil::haar_state(rng, 4);
    for (const auto& b : cnot(cnot_input(psi), 1, 3, 2)) {
      const auto key = outcome_signature(b.outcomes);
      const auto [it, inserted] = seen.emplace(key, b.applied_corrections);
      if (!inserted) CHECK(it->second == b.applied_corrections);
      const int p1 = *find_outcome(b.outcomes, "p1");
      const int p2 = *find_outcome(b.outcomes, "p2");
      const int z = *find_outcome(b.outcomes, "z");
      CHECK(cnot_needs_control_correction(p2) == (p2 == 0));
      CHECK(cnot_needs_target_correction(p1, z) == (z == p1));
    }
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("dropping a cnot correction breaks it") {
  const Vector superposed = kron(spinor(kH, kH), basis(0));
  CHECK(worst_cnot_fidelity(superposed, {false, true}) <= 0.51);
  CHECK(worst_cnot_fidelity(kron(basis(0), basis(0)), {true, false}) <= 0.51);
}

TEST_CASE("cnot circuit agrees with the gadget") {
  std::mt19937_64 rng(80);
  const Vector psi = testutil::haar_state(rng, 4);
  const std::array<int, 2> pair{1, 3};
  const Vector ideal = cnot_matrix() * psi;
  const auto branches = enumerate_branches(cnot_circuit(3, 1, 3, 2), cnot_input(psi));
  REQUIRE(branches.size() == 8);
  for (const auto& b : branches) CHECK(spin_fidelity(b.post_state, pair, ideal) >= 1.0 - 1e-9);
}

TEST_CASE("cnot rejects a bad ancilla") {
  const std::array<int, 3> arms{1, 2, 3};
  const FockState s = embed_spin_state(3, arms, kron(kron(basis(0), basis(0)), basis(0)));
  CHECK_THROWS_AS(cnot(s, 1, 3, 2), PreconditionViolation);
}

TEST_CASE("hadamard-pbs branch table") {
  const auto rows = hadamard_pbs_table();
  REQUIRE(rows.size() == 16);
  for (const auto& r : rows) {
    CHECK(r.match);
    CHECK(r.out_bit == r.expected_bit);
    CHECK(r.expected_bit == (r.a + r.y + r.z) % 2);
    CHECK(std::abs(r.phase - r.expected_sign) <= 1e-9);
    CHECK(std::abs(r.probability - 0.25) <= 1e-9);
  }
  auto find = [&](int a, int y, int p2, int z) {
    for (const auto& r : rows)
      if (r.a == a && r.y == y && r.p2 == p2 && r.z == z) return r;
    FAIL("row not found");
    return rows[0];
  };
  const auto r0 = find(0, 0, 1, 0);
  CHECK(r0.out_bit == 0);
  CHECK(r0.phase == doctest::Approx(1.0));
  const auto r1 = find(1, 0, 0, 0);
  CHECK(r1.out_bit == 1);
  CHECK(r1.phase == doctest::Approx(-1.0));
}

TEST_CASE("teleport correction table is frozen") {
  const TeleportTable derived = derive_teleport_corrections();
  for (int b = 0; b < 4; ++b) CHECK(derived[b] == kTeleportCorrections[b]);
  CHECK(to_string(PauliWord::xz) == "XZ");
}

TEST_CASE("teleportation") {
  const std::array<int, 1> out{3};
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector q = trial == 0 ? spinor(1.0, 0.0) : testutil::haar_state(rng, 2);
    const FockState in = prepare_bell(prepare_spin(vacuum(3), 1, q(0), q(1)), 0, 2, 3);
    const auto branches = teleport(in, 1, 2, 3);
    REQUIRE(branches.size() == 4);
    for (const auto& b : branches) {
      CHECK(std::abs(b.probability - 0.25) <= 1e-9);
      CHECK(spin_fidelity(b.output, out, q) >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("teleportation with the wrong resource fails") {
  const std::array<int, 1> out{3};
  const Vector q = spinor(0.6, Complex{0.0, 0.8});
  const FockState in = prepare_bell(prepare_spin(vacuum(3), 1, q(0), q(1)), 2, 2, 3);
  double worst = 1.0;
  for (const auto& b : teleport(in, 1, 2, 3)) worst = std::min(worst, spin_fidelity(b.output, out, q));
  CHECK(worst < 1.0 - 1e-3);
}
