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

#include <doctest.h>

#include <bit>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sha3pim/kat.hpp"
#include "sha3pim/keccak.hpp"

using namespace sha3pim;

namespace {

// Permutation of the zero state, from the reference permutation's published
// intermediate values (lane order x + 5y).
const std::array<uint64_t, 25> kZeroStateKat = {
    0xF1258F7940E1DDE7ull, 0x84D5CCF933C0478Aull, 0xD598261EA65AA9EEull, 0xBD1547306F80494Dull,
    0x8B284E056253D057ull, 0xFF97A42D7F8E6FD4ull, 0x90FEE5A0A44647C4ull, 0x8C5BDA0CD6192E76ull,
    0xAD30A6F71B19059Cull, 0x30935AB7D08FFC64ull, 0xEB5AA93F2317D635ull, 0xA9A6E6260D712103ull,
    0x81A57C16DBCF555Full, 0x43B831CD0347C826ull, 0x01F22F1A11A5569Full, 0x05E5635A21D9AE61ull,
    0x64BEFEF28CC970F2ull, 0x613670957BC46611ull, 0xB87C5A554FD00ECBull, 0x8C3EE88A1CCF32C8ull,
    0x940C7922AE3A2614ull, 0x1841F924A2C509E4ull, 0x16F53526E70465C2ull, 0x75F644E97F30A13Bull,
    0xEAF1FF7B5CECA249ull,
};

// Standard rotation offset table, frozen so the generator walk is checked
// against fixed values rather than against itself.
const int kFrozenRho[5][5] = {
    // [x][y]
    {0, 36, 3, 41, 18}, {1, 44, 10, 45, 2}, {62, 6, 43, 15, 61}, {28, 55, 25, 21, 56},
    {27, 20, 39, 8, 14},
};

std::vector<uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("lane widths and round counts") {
  CHECK(lane_width_valid(1));
  CHECK(lane_width_valid(64));
  CHECK(!lane_width_valid(0));
  CHECK(!lane_width_valid(3));
  CHECK(!lane_width_valid(128));
  CHECK(num_rounds(64) == 24);
  CHECK(num_rounds(32) == 22);
  CHECK(num_rounds(1) == 12);
  CHECK_THROWS_AS(KeccakState::zero(7), std::invalid_argument);
}

TEST_CASE("round constants: frozen table matches the LFSR") {
  auto rc64 = generate_round_constants(64);
  REQUIRE(rc64.size() == 24);
  for (int i = 0; i < 24; ++i) {
    CHECK(rc64[i] == kRoundConstants[i]);
    CHECK(rc64[i] == oracle::round_constant(i, 64));
  }
  auto rc32 = generate_round_constants(32);
  REQUIRE(rc32.size() == 22);
  for (int i = 0; i < 22; ++i) CHECK(rc32[i] == (kRoundConstants[i] & 0xFFFFFFFFull));
}

TEST_CASE("rho offsets: generator walk matches the frozen table") {
  RhoOffsets r = generate_rho_offsets(64);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) {
      CHECK(r[x][y] == kFrozenRho[x][y]);
      CHECK(kRhoOffsets64[x][y] == kFrozenRho[x][y]);
    }
  CHECK(r[0][0] == 0);
  CHECK(r[2][0] == 62);
  RhoOffsets r8 = generate_rho_offsets(8);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) CHECK(r8[x][y] == kFrozenRho[x][y] % 8);
}

TEST_CASE("theta") {
  KeccakState z = KeccakState::zero();
  CHECK(theta(z) == z);

  SUBCASE("single bit spreads to the neighbor sheets") {
    KeccakState s = KeccakState::zero();
    s.lane(0, 0) = 1;
    KeccakState t = theta(s);
    CHECK(t == oracle::to_state(oracle::theta(oracle::from_state(s))));
    CHECK(t.lane(0, 0) == 1);  // own column parity is even elsewhere
    for (int y = 0; y < 5; ++y) {
      CHECK(t.lane(1, y) == 1);  // C[0] lands unrotated on x=1
      CHECK(t.lane(4, y) == 2);  // and rotated by one on x=4
      CHECK(t.lane(2, y) == 0);
      CHECK(t.lane(3, y) == 0);
    }
  }

  SUBCASE("matches the bit-level oracle on random states") {
    std::mt19937_64 rng(0x7e7a5eed);
    for (int i = 0; i < 1000; ++i) {
      KeccakState s = oracle::random_state(rng);
      CHECK(theta(s) == oracle::to_state(oracle::theta(oracle::from_state(s))));
    }
  }

  SUBCASE("input is not modified") {
    std::mt19937_64 rng(1);
    KeccakState s = oracle::random_state(rng);
    KeccakState copy = s;
    (void)theta(s);
    CHECK(s == copy);
  }
}

TEST_CASE("rho") {
  KeccakState z = KeccakState::zero();
  CHECK(rho(z) == z);

  SUBCASE("bit 0 of lane (2,0) moves to bit 62") {
    KeccakState s = KeccakState::zero();
    s.lane(2, 0) = 1;
    CHECK(rho(s).lane(2, 0) == uint64_t{1} << 62);
  }

  SUBCASE("rotating back by w - r restores the lane") {
    std::mt19937_64 rng(2);
    KeccakState s = oracle::random_state(rng);
    KeccakState r = rho(s);
    RhoOffsets off = generate_rho_offsets(64);
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y) {
        uint64_t v = r.lane(x, y);
        int back = (64 - off[x][y]) % 64;
        uint64_t restored = back ? (v << back) | (v >> (64 - back)) : v;
        CHECK(restored == s.lane(x, y));
      }
  }

  SUBCASE("matches the bit-level oracle and preserves per-lane population") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
      KeccakState s = oracle::random_state(rng);
      KeccakState r = rho(s);
      CHECK(r == oracle::to_state(oracle::rho(oracle::from_state(s))));
      for (int j = 0; j < 25; ++j)
        CHECK(std::popcount(s.lanes[j]) == std::popcount(r.lanes[j]));
    }
  }
}

TEST_CASE("pi") {
  SUBCASE("uniform state is a fixed point") {
    KeccakState s = KeccakState::zero();
    for (auto& l : s.lanes) l = 0xDEADBEEFCAFEF00Dull;
    CHECK(pi(s) == s);
  }

  SUBCASE("lane (1,0) lands at (0,2)") {
    KeccakState s = KeccakState::zero();
    s.lane(1, 0) = 42;
    KeccakState p = pi(s);
    CHECK(p.lane(0, 2) == 42);
    CHECK(p.lane(1, 0) == 0);
  }

  SUBCASE("permutation order is 24 on labeled lanes") {
    KeccakState s = KeccakState::zero();
    for (int i = 0; i < 25; ++i) s.lanes[i] = i + 1;
    KeccakState p = s;
    int first_return = 0;
    for (int i = 1; i <= 24; ++i) {
      p = pi(p);
      if (p == s && first_return == 0) first_return = i;
    }
    CHECK(first_return == 24);
  }

  SUBCASE("matches the bit-level oracle and preserves lane multiset") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 1000; ++i) {
      KeccakState s = oracle::random_state(rng);
      KeccakState p = pi(s);
      CHECK(p == oracle::to_state(oracle::pi(oracle::from_state(s))));
      auto a = s.lanes, b = p.lanes;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
  }
}

TEST_CASE("chi") {
  KeccakState z = KeccakState::zero();
  CHECK(chi(z) == z);

  KeccakState ones = KeccakState::zero();
  for (auto& l : ones.lanes) l = ~uint64_t{0};
  CHECK(chi(ones) == ones);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    KeccakState s = oracle::random_state(rng);
    CHECK(chi(s) == oracle::to_state(oracle::chi(oracle::from_state(s))));
  }
}

TEST_CASE("iota") {
  KeccakState z = KeccakState::zero();

  SUBCASE("applying twice with the same index is the identity") {
    std::mt19937_64 rng(6);
    KeccakState s = oracle::random_state(rng);
    for (int i : {0, 5, 23}) CHECK(iota(iota(s, i), i) == s);
  }

  SUBCASE("zero state picks up RC[0]") {
    CHECK(iota(z, 0).lane(0, 0) == oracle::round_constant(0, 64));
    CHECK(iota(z, 0).lane(0, 0) == 0x1);
    KeccakState t = iota(z, 3);
    for (int i = 1; i < 25; ++i) CHECK(t.lanes[i] == 0);
  }

  SUBCASE("round index bounds") {
    CHECK_THROWS_AS(iota(z, 24), std::out_of_range);
    CHECK_THROWS_AS(iota(z, -1), std::out_of_range);
    CHECK_THROWS_AS(iota(KeccakState::zero(32), 22), std::out_of_range);
    CHECK_NOTHROW(iota(KeccakState::zero(32), 21));
  }

  SUBCASE("matches the oracle") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 24; ++i) {
      KeccakState s = oracle::random_state(rng);
      CHECK(iota(s, i) == oracle::to_state(oracle::iota(oracle::from_state(s), i)));
    }
  }
}

TEST_CASE("theta, rho, pi are linear over XOR") {
  std::mt19937_64 rng(8);
  auto x = [](const KeccakState& a, const KeccakState& b) {
    KeccakState out = a;
    for (int i = 0; i < 25; ++i) out.lanes[i] ^= b.lanes[i];
    return out;
  };
  for (int i = 0; i < 200; ++i) {
    KeccakState a = oracle::random_state(rng), b = oracle::random_state(rng);
    CHECK(theta(x(a, b)) == x(theta(a), theta(b)));
    CHECK(rho(x(a, b)) == x(rho(a), rho(b)));
    CHECK(pi(x(a, b)) == x(pi(a), pi(b)));
  }
}

TEST_CASE("keccak_f") {
  SUBCASE("zero-state known answer") {
    KeccakState out = keccak_f(KeccakState::zero());
    CHECK(out.lanes == kZeroStateKat);
  }

  SUBCASE("equals the 24-fold stage composition") {
    std::mt19937_64 rng(9);
    KeccakState s = oracle::random_state(rng);
    KeccakState composed = s;
    for (int i = 0; i < 24; ++i) composed = iota(chi(pi(rho(theta(composed)))), i);
    CHECK(keccak_f(s) == composed);
  }

  SUBCASE("narrow widths run their shorter schedules") {
    std::mt19937_64 rng(10);
    KeccakState s = oracle::random_state(rng, 32);
    KeccakState composed = s;
    for (int i = 0; i < 22; ++i) composed = keccak_round(composed, i);
    CHECK(keccak_f(s) == composed);
  }

  SUBCASE("moves every nonzero test input") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
      KeccakState s = oracle::random_state(rng);
      CHECK(keccak_f(s) != s);
    }
    KeccakState one = KeccakState::zero();
    one.lane(0, 0) = 1;
    CHECK(keccak_f(one) != one);
  }
}

TEST_CASE("sha3_256 known answers") {
  auto empty = sha3_256({});
  CHECK(to_hex(empty) == "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");
  auto abc = sha3_256(bytes("abc"));
  CHECK(to_hex(abc) == "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532");
}

TEST_CASE("sha3_256 block accounting") {
  CHECK(padded_block_count(0) == 1);
  CHECK(padded_block_count(1000) == 1);
  CHECK(padded_block_count(1080) == 1);
  CHECK(padded_block_count(1088) == 2);  // padding spills into a second block
  CHECK(padded_block_count(2168) == 2);
  CHECK(padded_block_count(2176) == 3);
  CHECK_THROWS_AS(padded_block_count(13), std::invalid_argument);
  CHECK(sha3_pad(std::vector<uint8_t>(2168 / 8)).size() == 2 * kRateBytes);
}

TEST_CASE("sha3_256 against the bundled KAT files") {
  for (const char* name : {"/sha3_256_short.rsp", "/sha3_256_long.rsp"}) {
    auto vectors = parse_kat_file(std::string(SHA3PIM_TEST_DATA) + name);
    CHECK(vectors.size() > 0);
    for (const auto& v : vectors) {
      REQUIRE(v.byte_aligned());
      auto d = sha3_256(v.msg);
      CHECK(std::equal(d.begin(), d.end(), v.md.begin(), v.md.end()));
    }
  }
}

TEST_CASE("KAT parser") {
  SUBCASE("bundled short file has the full ladder") {
    auto vectors = parse_kat_file(std::string(SHA3PIM_TEST_DATA) + "/sha3_256_short.rsp");
    CHECK(vectors.size() == 137);
    CHECK(vectors.front().len_bits == 0);
    CHECK(vectors.front().msg.empty());
    CHECK(vectors.back().len_bits == 1088);
  }

  SUBCASE("empty input parses to no vectors") {
    std::istringstream in("");
    CHECK(parse_kat(in).empty());
  }

  SUBCASE("non-byte lengths are carried through and flagged") {
    std::istringstream in("Len = 5\nMsg = 13\nMD = " + std::string(64, '0') + "\n");
    auto v = parse_kat(in);
    REQUIRE(v.size() == 1);
    CHECK(!v[0].byte_aligned());
  }

  SUBCASE("malformed lines are rejected") {
    std::istringstream in("Len = 8\nMsg = zz\nMD = 00\n");
    CHECK_THROWS_AS(parse_kat(in), std::runtime_error);
    std::istringstream in2("garbage line\n");
    CHECK_THROWS_AS(parse_kat(in2), std::runtime_error);
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_kat_file("/nonexistent/file.rsp"), std::runtime_error);
  }
}

TEST_CASE("hex helpers") {
  CHECK(to_hex(std::vector<uint8_t>{0x00, 0xff, 0x1a}) == "00ff1a");
  CHECK(parse_hex("00FF1a") == std::vector<uint8_t>{0x00, 0xff, 0x1a});
  CHECK_THROWS_AS(parse_hex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_hex("zz"), std::invalid_argument);
}
