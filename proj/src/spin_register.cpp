// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include "feqc/spin_register.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "feqc/errors.hpp"

namespace feqc {
namespace {

Eigen::Index spin_index(OccupationKey key, std::span<const int> arms) {
  Eigen::Index index = 0;
  for (int arm : arms) {
    if (arm_charge(key, arm) != 1) {
      throw PreconditionViolation("arm " + std::to_string(arm) + " is not singly occupied");
    }
    index = 2 * index + ((key & mode_bit(down(arm))) ? 1 : 0);
  }
  return index;
}

OccupationKey with_spins(OccupationKey key, std::span<const int> arms, Eigen::Index index) {
  for (auto it = arms.rbegin(); it != arms.rend(); ++it) {
    key &= ~(mode_bit(up(*it)) | mode_bit(down(*it)));
    key |= (index & 1) ? mode_bit(down(*it)) : mode_bit(up(*it));
    index >>= 1;
  }
  return key;
}

void check_arms(const FockState& state, std::span<const int> arms, Eigen::Index dim) {
  if (arms.empty() || arms.size() > 12) throw std::invalid_argument("need 1..12 arms");
  for (std::size_t i = 0; i < arms.size(); ++i) {
    state.check_arm(arms[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (arms[i] == arms[j]) throw std::invalid_argument("duplicate arm in spin register");
  }
  if (dim != (Eigen::Index{1} << arms.size())) {
    throw std::invalid_argument("spin register dimension mismatch");
  }
}

}  // namespace

FockState embed_spin_state(int num_arms, std::span<const int> arms, const Vector& amplitudes) {
  FockState out(num_arms);
  check_arms(out, arms, amplitudes.size());
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    out.accumulate(with_spins(0, arms, i), amplitudes(i));
  }
  out.prune();
  out.normalize();
  return out;
}

Matrix spin_density(const FockState& state, std::span<const int> arms) {
  const Eigen::Index dim = Eigen::Index{1} << arms.size();
  check_arms(state, arms, dim);
  OccupationKey register_mask = 0;
  for (int arm : arms) register_mask |= mode_bit(up(arm)) | mode_bit(down(arm));
  // Group amplitudes by the remainder of the key.
  std::map<OccupationKey, Vector> by_rest;
  for (const auto& [key, amp] : state.amplitudes()) {
    auto [it, inserted] = by_rest.try_emplace(key & ~register_mask, Vector::Zero(dim));
    it->second(spin_index(key, arms)) += amp;
  }
  Matrix rho = Matrix::Zero(dim, dim);
  for (const auto& [rest, v] : by_rest) rho += v * v.adjoint();
  return rho / state.norm_squared();
}

double spin_fidelity(const FockState& state, std::span<const int> arms, const Vector& target) {
  const Vector psi = target.normalized();
  return std::clamp((psi.adjoint() * spin_density(state, arms) * psi)(0, 0).real(), 0.0, 1.0);
}

FockState apply_spin_operator(const FockState& state, std::span<const int> arms,
                              const Matrix& op) {
  check_arms(state, arms, op.rows());
  if (op.cols() != op.rows()) throw std::invalid_argument("spin operator must be square");
  FockState out(state.num_arms());
  for (const auto& [key, amp] : state.amplitudes()) {
    const Eigen::Index col = spin_index(key, arms);
    for (Eigen::Index row = 0; row < op.rows(); ++row) {
      if (op(row, col) != Complex{}) out.accumulate(with_spins(key, arms, row), op(row, col) * amp);
    }
  }
  out.prune();
  return out;
}

OccupationKey spin_basis_key(std::span<const int> arms, Eigen::Index index) {
  return with_spins(0, arms, index);
}

Vector spinor(Complex alpha, Complex beta) {
  Vector v(2);
  v << alpha, beta;
  return v;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace feqc
