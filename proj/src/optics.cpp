// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include "feqc/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "feqc/errors.hpp"

namespace feqc {
namespace {

using SubsetMask = std::uint64_t;

constexpr int kMaxUnitaryModes = 24;

// Next bitmask with the same popcount (Gosper's hack).
SubsetMask next_combination(SubsetMask v) {
  const SubsetMask t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

std::vector<int> positions(SubsetMask mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

struct PairHash {
  std::size_t operator()(const std::pair<SubsetMask, SubsetMask>& p) const {
    return std::hash<SubsetMask>{}(p.first * 0x9E3779B97F4A7C15ull ^ p.second);
  }
};

}  // namespace

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const Matrix gram = u.adjoint() * u;
  return (gram - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

FockState apply_single_particle_unitary(const FockState& state,
                                        std::span<const ModeIndex> modes,
                                        const Matrix& u) {
  const int m = static_cast<int>(modes.size());
  if (m == 0) throw std::invalid_argument("unitary needs at least one mode");
  if (m > kMaxUnitaryModes) throw std::invalid_argument("too many modes for one unitary");
  if (u.rows() != m || u.cols() != m) {
    throw std::invalid_argument("unitary dimension does not match mode list");
  }
  if (!is_unitary(u)) throw std::invalid_argument("matrix is not unitary within 1e-10");
  for (const auto& mode : modes) state.check_mode(mode);

  // Sort the listed modes into global order and permute U accordingly.
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return modes[a].ordinal() < modes[b].ordinal(); });
  std::vector<int> ordinal(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    ordinal[i] = modes[order[i]].ordinal();
    if (i > 0 && ordinal[i] == ordinal[i - 1]) {
      throw std::invalid_argument("duplicate mode " + to_string(modes[order[i]]));
    }
  }
  Matrix sorted(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) sorted(r, c) = u(order[r], order[c]);

  OccupationKey listed = 0;
  for (int o : ordinal) listed |= OccupationKey{1} << o;

  auto to_key = [&](SubsetMask subset) {
    OccupationKey key = 0;
    for (int p : positions(subset)) key |= OccupationKey{1} << ordinal[p];
    return key;
  };
  auto to_subset = [&](OccupationKey key) {
    SubsetMask subset = 0;
    for (int i = 0; i < m; ++i)
      if ((key >> ordinal[i]) & 1u) subset |= SubsetMask{1} << i;
    return subset;
  };
  // Sign of moving the listed creators to the front past the rest.
  auto front_sign = [&](SubsetMask subset, OccupationKey rest) {
    int swaps = 0;
    for (int p : positions(subset)) swaps += occupied_before(rest, ordinal[p]);
    return swaps % 2 ? -1.0 : 1.0;
  };

  std::unordered_map<std::pair<SubsetMask, SubsetMask>, Complex, PairHash> minors;
  auto minor = [&](SubsetMask rows, SubsetMask cols) {
    auto [it, inserted] = minors.try_emplace({rows, cols});
    if (inserted) {
      const auto r = positions(rows);
      const auto c = positions(cols);
      const auto k = static_cast<Eigen::Index>(r.size());
      if (k == 0) {
        it->second = 1.0;
      } else {
        Matrix sub(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
          for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = sorted(r[i], c[j]);
        it->second = sub.determinant();
      }
    }
    return it->second;
  };

  FockState out(state.num_arms());
  for (const auto& [key, amp] : state.amplitudes()) {
    const OccupationKey rest = key & ~listed;
    const SubsetMask source = to_subset(key);
    const int k = std::popcount(source);
    const Complex prefactor = front_sign(source, rest) * amp;
    if (k == 0) {
      out.accumulate(key, amp);
      continue;
    }
    const SubsetMask end = SubsetMask{1} << m;
    for (SubsetMask target = (SubsetMask{1} << k) - 1; target < end;
         target = next_combination(target)) {
      const Complex d = minor(target, source);
      if (std::abs(d) < kPruneThreshold) continue;
      out.accumulate(rest | to_key(target), prefactor * front_sign(target, rest) * d);
      if (k == m) break;
    }
  }
  out.prune();
  return out;
}

Matrix beam_splitter_matrix() {
  Matrix bs(2, 2);
  bs << 1.0, 1.0, 1.0, -1.0;
  return bs / std::sqrt(2.0);
}

namespace {

void check_distinct_arms(const FockState& state, int arm_i, int arm_j) {
  state.check_arm(arm_i);
  state.check_arm(arm_j);
  if (arm_i == arm_j) throw std::invalid_argument("arms must be distinct");
}

}  // namespace

FockState beam_splitter(const FockState& state, int arm_i, int arm_j) {
  check_distinct_arms(state, arm_i, arm_j);
  const Matrix bs = beam_splitter_matrix();
  const ModeIndex ups[] = {up(arm_i), up(arm_j)};
  const ModeIndex downs[] = {down(arm_i), down(arm_j)};
  return apply_single_particle_unitary(apply_single_particle_unitary(state, ups, bs), downs, bs);
}

FockState polarizing_beam_splitter(const FockState& state, int arm_i, int arm_j) {
  check_distinct_arms(state, arm_i, arm_j);
  Matrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const ModeIndex downs[] = {down(arm_i), down(arm_j)};
  return apply_single_particle_unitary(state, downs, swap);
}

FockState swap_arms(const FockState& state, int arm_i, int arm_j) {
  check_distinct_arms(state, arm_i, arm_j);
  Matrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const ModeIndex ups[] = {up(arm_i), up(arm_j)};
  const ModeIndex downs[] = {down(arm_i), down(arm_j)};
  return apply_single_particle_unitary(apply_single_particle_unitary(state, ups, swap), downs,
                                       swap);
}

FockState spin_rotation(const FockState& state, int arm, const Matrix2& u2) {
  state.check_arm(arm);
  const ModeIndex spins[] = {up(arm), down(arm)};
  return apply_single_particle_unitary(state, spins, Matrix(u2));
}

namespace pauli {

Matrix2 identity() { return Matrix2::Identity(); }

Matrix2 x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix2 y() {
  Matrix2 m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

Matrix2 z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix2 hadamard() { return (x() + z()) / std::sqrt(2.0); }

}  // namespace pauli

namespace {

void require_empty_arm(const FockState& state, int arm) {
  state.check_arm(arm);
  for (const auto& [key, amp] : state.amplitudes()) {
    if (arm_charge(key, arm) != 0) {
      throw PreconditionViolation("arm " + std::to_string(arm) + " is already occupied");
    }
  }
}

}  // namespace

FockState prepare_spin(const FockState& state, int arm, Complex alpha, Complex beta) {
  require_empty_arm(state, arm);
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (n2 <= 0.0) throw std::invalid_argument("spinor must be nonzero");
  const double inv = 1.0 / std::sqrt(n2);
  FockState out = create(state, up(arm));
  out.scale(alpha * inv);
  const FockState with_down = create(state, down(arm));
  for (const auto& [key, amp] : with_down.amplitudes()) {
    out.accumulate(key, beta * inv * amp);
  }
  out.prune();
  out.normalize();
  return out;
}

FockState prepare_bell(const FockState& state, int k, int arm_a, int arm_b) {
  if (k < 0 || k > 3) throw std::invalid_argument("Bell index must be in 0..3");
  if (arm_a == arm_b) throw std::invalid_argument("Bell pair needs two distinct arms");
  require_empty_arm(state, arm_a);
  require_empty_arm(state, arm_b);
  const double h = 1.0 / std::sqrt(2.0);
  struct Term {
    Spin a, b;
    double coeff;
  };
  std::vector<Term> terms;
  switch (k) {
    case 0: terms = {{Spin::up, Spin::down, h}, {Spin::down, Spin::up, -h}}; break;
    case 1: terms = {{Spin::up, Spin::down, h}, {Spin::down, Spin::up, h}}; break;
    case 2: terms = {{Spin::up, Spin::up, h}, {Spin::down, Spin::down, h}}; break;
    default: terms = {{Spin::up, Spin::up, h}, {Spin::down, Spin::down, -h}}; break;
  }
  FockState out(state.num_arms());
  for (const auto& t : terms) {
    const FockState pair = create(create(state, {arm_b, t.b}), {arm_a, t.a});
    for (const auto& [key, amp] : pair.amplitudes()) out.accumulate(key, t.coeff * amp);
  }
  out.prune();
  out.normalize();
  return out;
}

}  // namespace feqc
