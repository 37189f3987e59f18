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

#include "oracles.hpp"

namespace oracle {

using sha3pim::KeccakState;

BitState from_state(const KeccakState& s) {
  BitState b;
  b.w = s.w;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      for (int z = 0; z < s.w; ++z) b.bit[x][y][z] = (s.lane(x, y) >> z) & 1;
  return b;
}

KeccakState to_state(const BitState& b) {
  KeccakState s = KeccakState::zero(b.w);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      for (int z = 0; z < b.w; ++z)
        if (b.bit[x][y][z]) s.lane(x, y) |= uint64_t{1} << z;
  return s;
}

BitState theta(const BitState& a) {
  bool c[5][64] = {};
  for (int x = 0; x < 5; ++x)
    for (int z = 0; z < a.w; ++z)
      c[x][z] = a.bit[x][0][z] ^ a.bit[x][1][z] ^ a.bit[x][2][z] ^ a.bit[x][3][z] ^ a.bit[x][4][z];
  BitState out = a;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      for (int z = 0; z < a.w; ++z)
        out.bit[x][y][z] = a.bit[x][y][z] ^ c[(x + 4) % 5][z] ^ c[(x + 1) % 5][(z + a.w - 1) % a.w];
  return out;
}

BitState rho(const BitState& a) {
  sha3pim::RhoOffsets r = sha3pim::generate_rho_offsets(a.w);
  BitState out = a;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      for (int z = 0; z < a.w; ++z)
        out.bit[x][y][(z + r[x][y]) % a.w] = a.bit[x][y][z];
  return out;
}

BitState pi(const BitState& a) {
  BitState out = a;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      for (int z = 0; z < a.w; ++z) out.bit[y][(2 * x + 3 * y) % 5][z] = a.bit[x][y][z];
  return out;
}

BitState chi(const BitState& a) {
  BitState out = a;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      for (int z = 0; z < a.w; ++z)
        out.bit[x][y][z] = a.bit[x][y][z] ^ (!a.bit[(x + 1) % 5][y][z] && a.bit[(x + 2) % 5][y][z]);
  return out;
}

int rc_bit(int t) {
  t %= 255;
  if (t == 0) return 1;
  // x^8 + x^6 + x^5 + x^4 + 1 over GF(2), register kept as individual bits
  bool r[8] = {true, false, false, false, false, false, false, false};
  for (int i = 0; i < t; ++i) {
    bool r8 = r[7];
    for (int j = 7; j > 0; --j) r[j] = r[j - 1];
    r[0] = r8;
    r[4] = r[4] != r8;
    r[5] = r[5] != r8;
    r[6] = r[6] != r8;
  }
  return r[0];
}

uint64_t round_constant(int round_index, int w) {
  uint64_t rc = 0;
  for (int j = 0; (1 << j) <= w; ++j)
    if (rc_bit(j + 7 * round_index)) rc |= uint64_t{1} << ((1 << j) - 1);
  return rc;
}

BitState iota(const BitState& a, int round_index) {
  BitState out = a;
  uint64_t rc = round_constant(round_index, a.w);
  for (int z = 0; z < a.w; ++z) out.bit[0][0][z] = out.bit[0][0][z] ^ ((rc >> z) & 1);
  return out;
}

std::array<int, 25> pi_index_map() {
  std::array<int, 25> map{};
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) map[y + 5 * ((2 * x + 3 * y) % 5)] = x + 5 * y;
  return map;
}

KeccakState random_state(std::mt19937_64& rng, int w) {
  KeccakState s = KeccakState::zero(w);
  for (auto& lane : s.lanes) lane = rng() & s.mask();
  return s;
}

}  // namespace oracle
