/*
 * Copyright 2026 sha3pim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sha3pim {

// Golden software reference for the Keccak-f permutation family and
// SHA3-256. Every simulated result is cross-checked against this module.

/// 5x5 grid of w-bit lanes. Lane (x, y) lives at index x + 5y; bit z of a
/// lane is numeric bit z of the word. Bits at or above w are always zero.
struct KeccakState {
  int w = 64;
  std::array<uint64_t, 25> lanes{};

  static KeccakState zero(int lane_width = 64);

  uint64_t lane(int x, int y) const { return lanes[x + 5 * y]; }
  uint64_t& lane(int x, int y) { return lanes[x + 5 * y]; }

  uint64_t mask() const {
    return w == 64 ? ~uint64_t{0} : (uint64_t{1} << w) - 1;
  }

  bool operator==(const KeccakState&) const = default;
};

bool lane_width_valid(int w);   // w in {1,2,4,8,16,32,64}
int num_rounds(int w);          // 12 + 2*log2(w)

/// Round constants for w=64 (24 rounds). Narrower widths use the same
/// schedule masked to w bits over their shorter round count.
extern const std::array<uint64_t, 24> kRoundConstants;

/// Regenerates the round-constant table from the degree-8 LFSR definition.
std::vector<uint64_t> generate_round_constants(int w);

using RhoOffsets = std::array<std::array<int, 5>, 5>;  // [x][y]

extern const RhoOffsets kRhoOffsets64;

/// Regenerates the rotation-offset table by the (1,0) coordinate walk,
/// reduced mod w.
RhoOffsets generate_rho_offsets(int w);

// The five round stages. All are pure; inputs are left unmodified.
KeccakState theta(const KeccakState& a);
KeccakState rho(const KeccakState& a);
KeccakState pi(const KeccakState& a);
KeccakState chi(const KeccakState& a);
KeccakState iota(const KeccakState& a, int round_index);

KeccakState keccak_round(const KeccakState& a, int round_index);
KeccakState keccak_f(const KeccakState& a);

inline constexpr int kRateBits = 1088;
inline constexpr int kRateBytes = kRateBits / 8;
inline constexpr int kRateLanes = kRateBits / 64;
inline constexpr int kDigestBytes = 32;

using Digest = std::array<uint8_t, kDigestBytes>;

/// SHA3-256 over a byte message (pad10*1 with the 0x06 domain suffix).
Digest sha3_256(std::span<const uint8_t> message);

/// Message length in bits -> number of 1088-bit rate blocks after padding.
uint64_t padded_block_count(uint64_t message_bits);

/// Pads a byte message to a whole number of rate blocks.
std::vector<uint8_t> sha3_pad(std::span<const uint8_t> message);

/// XORs one 136-byte rate block into the state (byte j -> lane j/8,
/// bit position 8*(j%8)).
void absorb_block(KeccakState& s, std::span<const uint8_t> block);

/// First 256 bits of the rate portion, i.e. lanes (0,0)..(3,0) serialized
/// little-endian.
Digest extract_digest(const KeccakState& s);

std::string to_hex(std::span<const uint8_t> bytes);
std::vector<uint8_t> parse_hex(const std::string& hex);  // throws on odd/garbage input

}  // namespace sha3pim
