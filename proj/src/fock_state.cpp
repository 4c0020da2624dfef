// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include "feqc/fock_state.hpp"

#include <cmath>
#include <stdexcept>

#include "feqc/errors.hpp"

namespace feqc {

std::string key_to_bitstring(OccupationKey key, int num_arms) {
  std::string bits(static_cast<std::size_t>(2 * num_arms), '0');
  for (int k = 0; k < 2 * num_arms; ++k) {
    if ((key >> k) & 1u) bits[static_cast<std::size_t>(k)] = '1';
  }
  return bits;
}

OccupationKey bitstring_to_key(const std::string& bits) {
  if (bits.size() > 2 * kMaxArms) throw std::invalid_argument("bitstring too long");
  OccupationKey key = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      key |= OccupationKey{1} << k;
    } else if (bits[k] != '0') {
      throw std::invalid_argument("bitstring must contain only 0 and 1");
    }
  }
  return key;
}

std::string to_string(ModeIndex m) {
  return "(" + std::to_string(m.arm) + "," + (m.spin == Spin::up ? "up" : "down") + ")";
}

FockState::FockState(int num_arms) : num_arms_(num_arms) {
  if (num_arms < 1 || num_arms > kMaxArms) {
    throw std::invalid_argument("arm count must be in 1.." + std::to_string(kMaxArms));
  }
}

FockState::FockState(int num_arms, Amplitudes amplitudes) : FockState(num_arms) {
  const OccupationKey limit = num_arms == kMaxArms ? ~OccupationKey{0}
                                                   : (OccupationKey{1} << (2 * num_arms)) - 1;
  for (const auto& [key, amp] : amplitudes) {
    if ((key & ~limit) != 0) throw std::invalid_argument("key wider than 2*num_arms bits");
  }
  amplitudes_ = std::move(amplitudes);
  prune();
}

Complex FockState::amplitude(OccupationKey key) const {
  auto it = amplitudes_.find(key);
  return it == amplitudes_.end() ? Complex{} : it->second;
}

void FockState::accumulate(OccupationKey key, Complex value) { amplitudes_[key] += value; }

void FockState::prune() {
  std::erase_if(amplitudes_, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

double FockState::norm_squared() const {
  double total = 0.0;
  for (const auto& [key, amp] : amplitudes_) total += std::norm(amp);
  return total;
}

void FockState::normalize() {
  const double n2 = norm_squared();
  if (n2 <= kPruneThreshold * kPruneThreshold) {
    throw PreconditionViolation("cannot normalize the zero state");
  }
  scale(1.0 / std::sqrt(n2));
}

void FockState::scale(Complex factor) {
  for (auto& [key, amp] : amplitudes_) amp *= factor;
  prune();
}

void FockState::check_arm(int arm) const {
  if (!valid_arm(arm)) {
    throw std::invalid_argument("arm " + std::to_string(arm) + " out of range 1.." +
                                std::to_string(num_arms_));
  }
}

void FockState::check_mode(ModeIndex mode) const { check_arm(mode.arm); }

double FockState::occupation(ModeIndex mode) const {
  check_mode(mode);
  const OccupationKey bit = mode_bit(mode);
  double total = 0.0;
  for (const auto& [key, amp] : amplitudes_) {
    if (key & bit) total += std::norm(amp);
  }
  return total;
}

double FockState::particle_number() const {
  double total = 0.0;
  for (const auto& [key, amp] : amplitudes_) total += std::popcount(key) * std::norm(amp);
  return total;
}

FockState vacuum(int num_arms) {
  if (num_arms < 1) throw std::invalid_argument("vacuum needs at least one arm");
  return FockState(num_arms, {{OccupationKey{0}, Complex{1.0, 0.0}}});
}

FockState create(const FockState& state, ModeIndex mode) {
  state.check_mode(mode);
  const OccupationKey bit = mode_bit(mode);
  FockState out(state.num_arms());
  for (const auto& [key, amp] : state.amplitudes()) {
    if (key & bit) continue;
    const double sign = occupied_before(key, mode.ordinal()) % 2 ? -1.0 : 1.0;
    out.accumulate(key | bit, sign * amp);
  }
  out.prune();
  return out;
}

FockState annihilate(const FockState& state, ModeIndex mode) {
  state.check_mode(mode);
  const OccupationKey bit = mode_bit(mode);
  FockState out(state.num_arms());
  for (const auto& [key, amp] : state.amplitudes()) {
    if (!(key & bit)) continue;
    const double sign = occupied_before(key, mode.ordinal()) % 2 ? -1.0 : 1.0;
    out.accumulate(key & ~bit, sign * amp);
  }
  out.prune();
  return out;
}

Complex inner_product(const FockState& bra, const FockState& ket) {
  if (bra.num_arms() != ket.num_arms()) {
    throw std::invalid_argument("inner product of states with different arm counts");
  }
  Complex total{};
  for (const auto& [key, amp] : ket.amplitudes()) total += std::conj(bra.amplitude(key)) * amp;
  return total;
}

double fidelity(const FockState& a, const FockState& b) {
  return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

Matrix one_body_density(const FockState& state) {
  const int n = state.num_modes();
  Matrix rho = Matrix::Zero(n, n);
  for (const auto& [key, amp] : state.amplitudes()) {
    for (int nu = 0; nu < n; ++nu) {
      if (!((key >> nu) & 1u)) continue;
      const OccupationKey removed = key & ~(OccupationKey{1} << nu);
      const int sign_nu = occupied_before(key, nu);
      for (int mu = 0; mu < n; ++mu) {
        if ((removed >> mu) & 1u) continue;
        const OccupationKey target = removed | (OccupationKey{1} << mu);
        const Complex bra = state.amplitude(target);
        if (bra == Complex{}) continue;
        const int parity = sign_nu + occupied_before(removed, mu);
        rho(mu, nu) += (parity % 2 ? -1.0 : 1.0) * std::conj(bra) * amp;
      }
    }
  }
  return rho;
}

}  // namespace feqc
