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

#include "sha3pim/keccak.hpp"

#include <bit>
#include <stdexcept>

namespace sha3pim {

namespace {

uint64_t rotl_w(uint64_t v, int n, int w, uint64_t mask) {
  n %= w;
  if (n == 0) return v & mask;
  return ((v << n) | (v >> (w - n))) & mask;
}

}  // namespace

KeccakState KeccakState::zero(int lane_width) {
  if (!lane_width_valid(lane_width))
    throw std::invalid_argument("KeccakState: lane width must be a power of two <= 64");
  KeccakState s;
  s.w = lane_width;
  return s;
}

bool lane_width_valid(int w) {
  return w > 0 && w <= 64 && std::has_single_bit(static_cast<unsigned>(w));
}

int num_rounds(int w) {
  if (!lane_width_valid(w)) throw std::invalid_argument("num_rounds: bad lane width");
  return 12 + 2 * std::countr_zero(static_cast<unsigned>(w));
}

const std::array<uint64_t, 24> kRoundConstants = {
    0x0000000000000001ull, 0x0000000000008082ull, 0x800000000000808Aull,
    0x8000000080008000ull, 0x000000000000808Bull, 0x0000000080000001ull,
    0x8000000080008081ull, 0x8000000000008009ull, 0x000000000000008Aull,
    0x0000000000000088ull, 0x0000000080008009ull, 0x000000008000000Aull,
    0x000000008000808Bull, 0x800000000000008Bull, 0x8000000000008089ull,
    0x8000000000008003ull, 0x8000000000008002ull, 0x8000000000000080ull,
    0x000000000000800Aull, 0x800000008000000Aull, 0x8000000080008081ull,
    0x8000000000008080ull, 0x0000000080000001ull, 0x8000000080008008ull,
};

std::vector<uint64_t> generate_round_constants(int w) {
  int rounds = num_rounds(w);
  int l = std::countr_zero(static_cast<unsigned>(w));
  // rc(t): bit 0 of the LFSR x^8 + x^6 + x^5 + x^4 + 1 after t steps.
  auto rc_bit = [](int t) -> int {
    t %= 255;
    if (t == 0) return 1;
    unsigned r = 1;
    for (int i = 0; i < t; ++i) {
      r <<= 1;
      if (r & 0x100) r ^= 0x171;
    }
    return r & 1;
  };
  std::vector<uint64_t> out(rounds, 0);
  for (int ir = 0; ir < rounds; ++ir)
    for (int j = 0; j <= l; ++j)
      if (rc_bit(j + 7 * ir)) out[ir] |= uint64_t{1} << ((1 << j) - 1);
  return out;
}

const RhoOffsets kRhoOffsets64 = [] {
  return generate_rho_offsets(64);
}();

RhoOffsets generate_rho_offsets(int w) {
  if (!lane_width_valid(w)) throw std::invalid_argument("generate_rho_offsets: bad lane width");
  RhoOffsets r{};
  int x = 1, y = 0;
  for (int t = 0; t < 24; ++t) {
    r[x][y] = ((t + 1) * (t + 2) / 2) % w;
    int nx = y, ny = (2 * x + 3 * y) % 5;
    x = nx;
    y = ny;
  }
  r[0][0] = 0;
  return r;
}

KeccakState theta(const KeccakState& a) {
  uint64_t mask = a.mask();
  uint64_t c[5];
  for (int x = 0; x < 5; ++x)
    c[x] = a.lane(x, 0) ^ a.lane(x, 1) ^ a.lane(x, 2) ^ a.lane(x, 3) ^ a.lane(x, 4);
  KeccakState out = a;
  for (int x = 0; x < 5; ++x) {
    uint64_t d = c[(x + 4) % 5] ^ rotl_w(c[(x + 1) % 5], 1, a.w, mask);
    for (int y = 0; y < 5; ++y) out.lane(x, y) ^= d;
  }
  return out;
}

KeccakState rho(const KeccakState& a) {
  RhoOffsets r = a.w == 64 ? kRhoOffsets64 : generate_rho_offsets(a.w);
  uint64_t mask = a.mask();
  KeccakState out = a;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) out.lane(x, y) = rotl_w(a.lane(x, y), r[x][y], a.w, mask);
  return out;
}

KeccakState pi(const KeccakState& a) {
  KeccakState out = a;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) out.lane(y, (2 * x + 3 * y) % 5) = a.lane(x, y);
  return out;
}

KeccakState chi(const KeccakState& a) {
  uint64_t mask = a.mask();
  KeccakState out = a;
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x)
      out.lane(x, y) = a.lane(x, y) ^ (~a.lane((x + 1) % 5, y) & a.lane((x + 2) % 5, y) & mask);
  return out;
}

KeccakState iota(const KeccakState& a, int round_index) {
  if (round_index < 0 || round_index >= num_rounds(a.w))
    throw std::out_of_range("iota: round index out of range");
  KeccakState out = a;
  out.lane(0, 0) ^= kRoundConstants[round_index] & a.mask();
  return out;
}

KeccakState keccak_round(const KeccakState& a, int round_index) {
  return iota(chi(pi(rho(theta(a)))), round_index);
}

KeccakState keccak_f(const KeccakState& a) {
  KeccakState s = a;
  int rounds = num_rounds(a.w);
  for (int i = 0; i < rounds; ++i) s = keccak_round(s, i);
  return s;
}

uint64_t padded_block_count(uint64_t message_bits) {
  if (message_bits % 8 != 0)
    throw std::invalid_argument("padded_block_count: byte-oriented API, bits must be a multiple of 8");
  // pad10*1 with the domain suffix always appends at least one byte.
  return message_bits / 8 / kRateBytes + 1;
}

std::vector<uint8_t> sha3_pad(std::span<const uint8_t> message) {
  std::vector<uint8_t> out(message.begin(), message.end());
  out.push_back(0x06);
  out.resize(padded_block_count(message.size() * 8) * kRateBytes, 0);
  out.back() |= 0x80;
  return out;
}

void absorb_block(KeccakState& s, std::span<const uint8_t> block) {
  if (s.w != 64) throw std::invalid_argument("absorb_block: requires 64-bit lanes");
  if (block.size() != kRateBytes) throw std::invalid_argument("absorb_block: block must be 136 bytes");
  for (int i = 0; i < kRateLanes; ++i) {
    uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= uint64_t{block[8 * i + b]} << (8 * b);
    s.lanes[i] ^= v;
  }
}

Digest extract_digest(const KeccakState& s) {
  Digest d{};
  for (int i = 0; i < 4; ++i) {
    uint64_t v = s.lanes[i];
    for (int b = 0; b < 8; ++b) d[8 * i + b] = static_cast<uint8_t>(v >> (8 * b));
  }
  return d;
}

Digest sha3_256(std::span<const uint8_t> message) {
  KeccakState s = KeccakState::zero(64);
  std::vector<uint8_t> padded = sha3_pad(message);
  for (size_t off = 0; off < padded.size(); off += kRateBytes) {
    absorb_block(s, std::span<const uint8_t>(padded).subspan(off, kRateBytes));
    s = keccak_f(s);
  }
  return extract_digest(s);
}

std::string to_hex(std::span<const uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

std::vector<uint8_t> parse_hex(const std::string& hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("parse_hex: not a hex digit");
  };
  if (hex.size() % 2 != 0) throw std::invalid_argument("parse_hex: odd length");
  std::vector<uint8_t> out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  return out;
}

}  // namespace sha3pim
