// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "feqc/errors.hpp"
#include "feqc/fock_state.hpp"
#include "feqc/optics.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace feqc;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

OccupationKey key_of(std::initializer_list<ModeIndex> modes) {
  OccupationKey k = 0;
  for (auto m : modes) k |= mode_bit(m);
  return k;
}

FockState bell(int k) { return prepare_bell(vacuum(2), k, 1, 2); }

}  // namespace

TEST_CASE("vacuum") {
  const FockState v2 = vacuum(2);
  CHECK(v2.num_modes() == 4);
  CHECK(v2.size() == 1);
  CHECK(v2.amplitude(0) == Complex{1.0});
  CHECK(key_to_bitstring(0, 2) == "0000");
  const FockState v1 = vacuum(1);
  CHECK(v1.num_modes() == 2);
  CHECK(v1.norm_squared() == doctest::Approx(1.0));
  CHECK(vacuum(4).particle_number() == 0.0);
  CHECK_THROWS(vacuum(0));
  CHECK_THROWS(vacuum(kMaxArms + 1));
}

TEST_CASE("create and annihilate") {
  const FockState s = create(vacuum(1), up(1));
  CHECK(s.size() == 1);
  CHECK(key_to_bitstring(s.amplitudes().begin()->first, 1) == "10");
  CHECK(create(s, up(1)).empty());

  const FockState du = create(create(vacuum(1), down(1)), up(1));
  const FockState ud = create(create(vacuum(1), up(1)), down(1));
  CHECK(inner_product(du, ud) == Complex{-1.0});
  // exact sign bookkeeping, not merely close
  CHECK(du.amplitude(3) == -ud.amplitude(3));

  CHECK(annihilate(s, up(1)).amplitude(0) == Complex{1.0});
  CHECK(annihilate(s, down(1)).empty());
  CHECK_THROWS_AS(create(vacuum(1), up(2)), std::invalid_argument);
}

TEST_CASE("anticommutation over all mode pairs") {
  const int arms = 3;
  for (int mu = 0; mu < 2 * arms; ++mu)
    for (int nu = 0; nu < 2 * arms; ++nu) {
      if (mu == nu) continue;
      const auto a = ModeIndex::from_ordinal(mu), b = ModeIndex::from_ordinal(nu);
      const FockState ab = create(create(vacuum(arms), a), b);
      const FockState ba = create(create(vacuum(arms), b), a);
      const OccupationKey k = mode_bit(a) | mode_bit(b);
      CHECK(ab.amplitude(k) == -ba.amplitude(k));
    }
}

TEST_CASE("prepare_spin") {
  const FockState up_state = prepare_spin(vacuum(1), 1, 1.0, 0.0);
  CHECK(up_state.amplitude(key_of({up(1)})) == Complex{1.0});
  const FockState plus = prepare_spin(vacuum(1), 1, 1.0, 1.0);
  CHECK(plus.norm_squared() == doctest::Approx(1.0));
  CHECK(std::abs(plus.amplitude(key_of({up(1)})) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(plus.amplitude(key_of({down(1)})) - kInvSqrt2) < 1e-15);
  CHECK_THROWS_AS(prepare_spin(up_state, 1, 1.0, 0.0), PreconditionViolation);
  CHECK_THROWS_AS(prepare_spin(vacuum(1), 1, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("prepare_bell amplitudes and orthonormality") {
  const FockState s0 = bell(0);
  const Complex ud = s0.amplitude(key_of({up(1), down(2)}));
  const Complex du = s0.amplitude(key_of({down(1), up(2)}));
  CHECK(std::abs(std::abs(ud) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(du + ud) < 1e-15);

  const FockState s2 = bell(2);
  const Complex uu = s2.amplitude(key_of({up(1), up(2)}));
  const Complex dd = s2.amplitude(key_of({down(1), down(2)}));
  CHECK(std::abs(uu - dd) < 1e-15);
  CHECK(std::abs(std::abs(uu) - kInvSqrt2) < 1e-15);

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(inner_product(bell(i), bell(j)) - Complex{i == j ? 1.0 : 0.0}) < 1e-12);
  CHECK_THROWS_AS(prepare_bell(vacuum(2), 4, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(prepare_bell(vacuum(2), 0, 1, 1), std::invalid_argument);
}

TEST_CASE("single-particle unitary: basic examples") {
  std::mt19937_64 rng(11);
  const std::array<ModeIndex, 2> modes{up(1), down(2)};
  const Matrix u = testutil::haar_unitary(rng, 2);

  const FockState s = create(vacuum(2), up(1));
  CHECK(testutil::max_amplitude_difference(
            apply_single_particle_unitary(s, modes, Matrix::Identity(2, 2)), s) < 1e-15);

  const FockState out = apply_single_particle_unitary(s, modes, u);
  CHECK(std::abs(out.amplitude(key_of({up(1)})) - u(0, 0)) < 1e-14);
  CHECK(std::abs(out.amplitude(key_of({down(2)})) - u(1, 0)) < 1e-14);

  const FockState both = create(create(vacuum(2), up(1)), down(2));
  const OccupationKey full = key_of({up(1), down(2)});
  const FockState both_out = apply_single_particle_unitary(both, modes, u);
  CHECK(both_out.size() == 1);
  CHECK(std::abs(both_out.amplitude(full) - both.amplitude(full) * u.determinant()) < 1e-14);

  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(apply_single_particle_unitary(s, modes, bad), std::invalid_argument);
  const std::array<ModeIndex, 2> dup{up(1), up(1)};
  CHECK_THROWS_AS(apply_single_particle_unitary(s, dup, u), std::invalid_argument);
  CHECK_THROWS_AS(apply_single_particle_unitary(s, modes, Matrix::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("single-particle unitary matches the dense oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int arms = 2 + trial % 2;
    const int n = 2 * arms;
    const int particles = 1 + trial % (n - 1);
    const FockState psi = testutil::random_state(rng, arms, particles);

    std::vector<int> ordinals(n);
    for (int i = 0; i < n; ++i) ordinals[i] = i;
    std::shuffle(ordinals.begin(), ordinals.end(), rng);
    const int m = 2 + trial % (n - 1);
    std::vector<ModeIndex> modes;
    for (int i = 0; i < m; ++i) modes.push_back(ModeIndex::from_ordinal(ordinals[i]));
    const Matrix u = testutil::haar_unitary(rng, m);

    const FockState got = apply_single_particle_unitary(psi, modes, u);
    const oracle::Vector want = oracle::apply_unitary(oracle::to_dense(psi), n, modes, u);
    CHECK((oracle::to_dense(got) - want).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("norm and particle-number conservation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int arms = 3;
    const int particles = 1 + trial % 5;
    FockState psi = testutil::random_state(rng, arms, particles);
    std::vector<ModeIndex> modes;
    for (int i = 0; i < 2 * arms; ++i) modes.push_back(ModeIndex::from_ordinal(i));
    psi = apply_single_particle_unitary(psi, modes, testutil::haar_unitary(rng, 2 * arms));
    psi = beam_splitter(psi, 1, 3);
    psi = polarizing_beam_splitter(psi, 2, 3);
    psi = spin_rotation(psi, 1, pauli::hadamard());
    CHECK(std::abs(psi.norm_squared() - 1.0) <= 1e-9);
    for (const auto& [key, amp] : psi.amplitudes()) CHECK(std::popcount(key) == particles);
  }
}

TEST_CASE("composition of unitaries") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const FockState psi = testutil::random_state(rng, 3, 2 + trial % 3);
    const std::vector<ModeIndex> modes{up(1), down(2), up(3), down(3)};
    const Matrix u = testutil::haar_unitary(rng, 4);
    const Matrix v = testutil::haar_unitary(rng, 4);
    const FockState seq =
        apply_single_particle_unitary(apply_single_particle_unitary(psi, modes, u), modes, v);
    const FockState once = apply_single_particle_unitary(psi, modes, v * u);
    CHECK(testutil::max_amplitude_difference(seq, once) < 1e-9);
  }
}

TEST_CASE("beam splitter Bell table") {
  const FockState out0 = beam_splitter(bell(0), 1, 2);
  for (const auto& [key, amp] : out0.amplitudes()) {
    CHECK(arm_charge(key, 1) != 1);
    CHECK(arm_charge(key, 2) != 1);
  }
  FockState bunched(2);
  bunched.accumulate(key_of({up(1), down(1)}), kInvSqrt2);
  bunched.accumulate(key_of({up(2), down(2)}), -kInvSqrt2);
  CHECK(std::abs(inner_product(bunched, out0) - Complex{1.0}) < 1e-12);

  for (int k = 1; k < 4; ++k) {
    const FockState out = beam_splitter(bell(k), 1, 2);
    CHECK(std::abs(inner_product(bell(k), out) - Complex{-1.0}) < 1e-12);
  }

  const FockState split = beam_splitter(create(vacuum(2), up(1)), 1, 2);
  CHECK(std::abs(split.amplitude(key_of({up(1)})) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(split.amplitude(key_of({up(2)})) - kInvSqrt2) < 1e-15);
}

TEST_CASE("beam splitter Bell table from the dense oracle") {
  // Brute-force the 4-mode two-particle sector independently of the engine.
  const std::vector<ModeIndex> modes{up(1), up(2)};
  const std::vector<ModeIndex> downs{down(1), down(2)};
  const Matrix bs = beam_splitter_matrix();
  for (int k = 0; k < 4; ++k) {
    oracle::Vector v = oracle::to_dense(bell(k));
    v = oracle::apply_unitary(v, 4, modes, bs);
    v = oracle::apply_unitary(v, 4, downs, bs);
    const oracle::Vector in = oracle::to_dense(bell(k));
    if (k == 0)
      CHECK(std::abs(in.dot(v)) < 1e-12);
    else
      CHECK(std::abs(in.dot(v) - Complex{-1.0}) < 1e-12);
    CHECK((oracle::to_dense(beam_splitter(bell(k), 1, 2)) - v).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("polarizing beam splitter routing") {
  const FockState ud = create(create(vacuum(2), up(1)), down(2));
  const FockState out = polarizing_beam_splitter(ud, 1, 2);
  CHECK(out.size() == 1);
  CHECK(arm_charge(out.amplitudes().begin()->first, 1) == 2);

  const FockState uu = create(create(vacuum(2), up(1)), up(2));
  CHECK(testutil::max_amplitude_difference(polarizing_beam_splitter(uu, 1, 2), uu) < 1e-15);

  std::mt19937_64 rng(3);
  const FockState psi = testutil::random_state(rng, 2, 2);
  const FockState twice = polarizing_beam_splitter(polarizing_beam_splitter(psi, 1, 2), 1, 2);
  CHECK(testutil::max_amplitude_difference(twice, psi) < 1e-12);
}

TEST_CASE("spin rotations reproduce the analyzer identities") {
  const FockState z1 = spin_rotation(bell(1), 2, pauli::z());
  CHECK(std::abs(inner_product(bell(0), z1) - Complex{-1.0}) < 1e-12);

  const FockState xz2 = spin_rotation(spin_rotation(bell(2), 2, pauli::z()), 2, pauli::x());
  CHECK(std::abs(inner_product(bell(0), xz2) - Complex{1.0}) < 1e-12);

  const FockState s = prepare_spin(vacuum(1), 1, 0.6, 0.8);
  const FockState hh = spin_rotation(spin_rotation(s, 1, pauli::hadamard()), 1, pauli::hadamard());
  CHECK(testutil::max_amplitude_difference(hh, s) < 1e-14);
}

TEST_CASE("fidelity") {
  const FockState a = bell(0);
  FockState b = a;
  b.scale(Complex{0.0, 1.0});
  CHECK(fidelity(a, b) == doctest::Approx(1.0));
  CHECK(fidelity(a, bell(1)) == doctest::Approx(0.0));
  CHECK_THROWS(fidelity(a, vacuum(3)));
}

TEST_CASE("one_body_density matches dense two-point functions") {
  std::mt19937_64 rng(8);
  const FockState psi = testutil::random_state(rng, 2, 2);
  const Matrix rho = one_body_density(psi);
  const oracle::Vector v = oracle::to_dense(psi);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      CHECK(std::abs(rho(mu, nu) - oracle::two_point(v, 4, mu, nu)) < 1e-12);
}
