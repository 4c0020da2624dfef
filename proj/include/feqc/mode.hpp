// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>

namespace feqc {

enum class Spin : std::uint8_t { up = 0, down = 1 };

inline constexpr Spin flipped(Spin s) { return s == Spin::up ? Spin::down : Spin::up; }

/// Occupation bitmask over all modes of a system. Bit k is the mode with
/// ordinal k (see ModeIndex::ordinal).
using OccupationKey = std::uint64_t;

inline constexpr int kMaxArms = 32;

/// A fermionic mode: spatial arm (1-based) and spin. The lexicographic
/// order (arm, spin) with up < down is the global sign convention.
struct ModeIndex {
  int arm = 1;
  Spin spin = Spin::up;

  constexpr int ordinal() const { return 2 * (arm - 1) + static_cast<int>(spin); }
  static constexpr ModeIndex from_ordinal(int k) {
    return ModeIndex{k / 2 + 1, (k % 2) ? Spin::down : Spin::up};
  }

  constexpr auto operator<=>(const ModeIndex&) const = default;
};

inline constexpr ModeIndex up(int arm) { return {arm, Spin::up}; }
inline constexpr ModeIndex down(int arm) { return {arm, Spin::down}; }

inline constexpr OccupationKey mode_bit(ModeIndex m) {
  return OccupationKey{1} << m.ordinal();
}

/// Number of occupied modes strictly preceding `ordinal`.
inline constexpr int occupied_before(OccupationKey key, int ordinal) {
  return std::popcount(key & ((OccupationKey{1} << ordinal) - 1));
}

inline constexpr int mode_bit_shift(int arm) { return 2 * (arm - 1); }

inline constexpr int arm_charge(OccupationKey key, int arm) {
  return std::popcount((key >> mode_bit_shift(arm)) & OccupationKey{0b11});
}

/// Bitstring in mode order, first character = mode (1, up).
std::string key_to_bitstring(OccupationKey key, int num_arms);
OccupationKey bitstring_to_key(const std::string& bits);

std::string to_string(ModeIndex m);

}  // namespace feqc
