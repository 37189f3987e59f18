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

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sha3pim/compiler.hpp"
#include "sha3pim/isa.hpp"

using namespace sha3pim;

namespace {

Command random_command(std::mt19937_64& rng, int k) {
  int max_row = (1 << k) - 1;
  auto row = [&] { return static_cast<int>(rng() % (max_row + 1)); };
  switch (rng() % 4) {
    case 0: return Command::load(row(), rng());
    case 1: return Command::unary_not(row(), row());
    case 2: {
      int offset = static_cast<int>(rng() % std::min(64, max_row + 1));
      return Command::shift(row(), row(), offset,
                            rng() % 2 ? RotateDir::Left : RotateDir::Right);
    }
    default: {
      int a = row(), b = row();
      if (a == b) b = (a + 1) & max_row;
      return Command::binary(rng() % 2 ? BinaryKind::Xor : BinaryKind::And, row(), a, b);
    }
  }
}

}  // namespace

TEST_CASE("command construction invariants") {
  CHECK_THROWS_AS(Command::shift(0, 1, 64), std::invalid_argument);
  CHECK_THROWS_AS(Command::shift(0, 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(Command::binary(BinaryKind::Xor, 2, 5, 5), std::invalid_argument);
  Command c = Command::binary(BinaryKind::And, 5, 5, 6);
  CHECK(c.in_place());
  CHECK(!Command::load(3, 1).in_place());
  CHECK(Command::shift(4, 4, 1).in_place());
}

TEST_CASE("golden encodings, k=8") {
  SUBCASE("BINARY XOR result=25 op1=0 op2=5") {
    auto bytes = encode(Command::binary(BinaryKind::Xor, 25, 0, 5), 8);
    CHECK(bytes == std::vector<uint8_t>{0x67, 0x00, 0x14, 0x00});
  }

  SUBCASE("AND flips bit 26") {
    auto bytes = encode(Command::binary(BinaryKind::And, 25, 0, 5), 8);
    CHECK(bytes == std::vector<uint8_t>{0x67, 0x00, 0x14, 0x04});
  }

  SUBCASE("LOAD result=25 payload=1 is 10 bytes, payload little-endian") {
    auto bytes = encode(Command::load(25, 1), 8);
    CHECK(bytes == std::vector<uint8_t>{0x64, 0x00, 0x01, 0, 0, 0, 0, 0, 0, 0});
  }

  SUBCASE("SHIFT by 62 decodes back") {
    auto bytes = encode(Command::shift(10, 10, 62), 8);
    CHECK(bytes == std::vector<uint8_t>{0x2a, 0x28, 0xf8, 0x00});
    DecodeResult d = decode(bytes, 8);
    CHECK(d.cmd.opcode == Opcode::Shift);
    CHECK(d.cmd.operand2_or_offset == 62);
    CHECK(d.bytes_consumed == 4);
  }
}

TEST_CASE("k=5 field layout") {
  // 18-bit words in 3 bytes; LOAD header fits one byte
  CHECK(encoded_size(Opcode::Binary, 5) == 3);
  CHECK(encoded_size(Opcode::Load, 5) == 9);
  auto bytes = encode(Command::binary(BinaryKind::And, 25, 0, 5), 5);
  REQUIRE(bytes.size() == 3);
  // opcode=11, result=25 at [2:6], operand=0 at [7:11], operand2=5 at [12:16], AND bit 17
  CHECK(bytes == std::vector<uint8_t>{0x67, 0x50, 0x02});
  CHECK(decode(bytes, 5).cmd == Command::binary(BinaryKind::And, 25, 0, 5));

  SUBCASE("fields that fit k=8 can overflow k=5") {
    CHECK_THROWS_AS(encode(Command::unary_not(32, 0), 5), std::out_of_range);
    CHECK_THROWS_AS(encode(Command::shift(0, 1, 62), 5), std::out_of_range);
    CHECK_NOTHROW(encode(Command::shift(0, 1, 31), 5));
  }
}

TEST_CASE("encode/decode round trip on random valid commands") {
  std::mt19937_64 rng(0xc0de);
  for (int k : {5, 8}) {
    for (int i = 0; i < 10000; ++i) {
      Command c = random_command(rng, k);
      auto bytes = encode(c, k);
      CHECK(bytes.size() == encoded_size(c.opcode, k));
      DecodeResult d = decode(bytes, k);
      CHECK(d.cmd == c);
      CHECK(d.bytes_consumed == bytes.size());
    }
  }
}

TEST_CASE("decode rejects malformed input") {
  SUBCASE("all-zero word is a LOAD missing its payload") {
    std::vector<uint8_t> zeros(4, 0);
    CHECK_THROWS_AS(decode(zeros, 8), std::runtime_error);
  }

  SUBCASE("truncated non-LOAD word") {
    auto bytes = encode(Command::binary(BinaryKind::Xor, 1, 2, 3), 8);
    bytes.pop_back();
    CHECK_THROWS_AS(decode(bytes, 8), std::runtime_error);
  }

  SUBCASE("nonzero padding bits") {
    auto bytes = encode(Command::binary(BinaryKind::Xor, 1, 2, 3), 8);
    bytes[3] |= 0x80;  // above bit 26
    CHECK_THROWS_AS(decode(bytes, 8), std::runtime_error);
  }

  SUBCASE("binary with equal operand rows") {
    auto enc = encode(Command::binary(BinaryKind::Xor, 1, 2, 3), 8);
    // patch operand2 field [18:25] from 3 to 2, colliding with operand 1
    enc[2] = static_cast<uint8_t>((enc[2] & 0x03) | (2 << 2));
    enc[3] &= 0xFE;
    CHECK_THROWS_AS(decode(enc, 8), std::invalid_argument);
  }

  SUBCASE("shift offset field of 64 or more") {
    auto enc = encode(Command::shift(1, 2, 63), 8);
    // patch the offset field [18:25] to 64
    enc[2] = static_cast<uint8_t>(enc[2] & 0x03);
    enc[3] = static_cast<uint8_t>((enc[3] & 0xFC) | 0x01);  // bit 24 -> offset 64
    CHECK_THROWS_AS(decode(enc, 8), std::invalid_argument);
  }

  SUBCASE("empty input") {
    CHECK_THROWS_AS(decode(std::vector<uint8_t>{}, 8), std::runtime_error);
  }
}

TEST_CASE("stream files round trip") {
  TileLayout ly = TileLayout::build(32, 256, 64);
  CommandStream s = compile_theta(ly).commands;
  auto bytes = serialize_stream(s, 8);
  CHECK(bytes[0] == 'I');
  CHECK(bytes[1] == 'N');
  CHECK(bytes[2] == 'H');
  CHECK(bytes[3] == 'L');
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 8);
  StreamFile f = parse_stream(bytes);
  CHECK(f.k == 8);
  CHECK(f.commands == s.commands());

  SUBCASE("corrupt magic rejected") {
    bytes[0] = 'X';
    CHECK_THROWS_AS(parse_stream(bytes), std::runtime_error);
  }
  SUBCASE("trailing garbage rejected") {
    bytes.push_back(0xFF);
    CHECK_THROWS_AS(parse_stream(bytes), std::runtime_error);
  }
}

TEST_CASE("execute semantics") {
  Subarray sub(32, 256);
  CycleCostModel cost;

  SUBCASE("empty stream: no cycles, no change") {
    Subarray before = sub;
    CycleReport r = execute(CommandStream{}, sub, cost);
    CHECK(r.total == 0);
    CHECK(r.commands == 0);
    CHECK(sub == before);
  }

  SUBCASE("LOAD replicates its payload into every tile segment") {
    CommandStream s;
    s.push(Command::load(5, 0x0123456789ABCDEFull), Stage::Iota);
    CycleReport r = execute(s, sub, cost);
    CHECK(r.total == 0);  // loads are overlapped by default
    for (int t = 0; t < 4; ++t) CHECK(read_lane(sub, 5, t, 64) == 0x0123456789ABCDEFull);

    CycleCostModel charged;
    charged.load_cycles = 1;
    CHECK(execute(s, sub, charged).total == 1);
  }

  SUBCASE("UNARY writes the complement") {
    CommandStream s;
    s.push(Command::load(3, 0x00FF00FF00FF00FFull), Stage::Iota);
    s.push(Command::unary_not(4, 3), Stage::Chi);
    execute(s, sub, cost);
    for (int t = 0; t < 4; ++t) CHECK(read_lane(sub, 4, t, 64) == 0xFF00FF00FF00FF00ull);
  }

  SUBCASE("cycle charges per opcode") {
    CommandStream s;
    s.push(Command::load(0, 1), Stage::Iota);                          // 0
    s.push(Command::unary_not(1, 0), Stage::Chi);                      // 4
    s.push(Command::binary(BinaryKind::Xor, 2, 0, 1), Stage::Theta);   // 4
    s.push(Command::shift(2, 2, 7), Stage::Rho);                       // 2
    CycleReport r = execute(s, sub, cost);
    CHECK(r.total == 10);
    CHECK(r.cycles(Stage::Theta) == 4);
    CHECK(r.cycles(Stage::Rho) == 2);
    CHECK(r.cycles(Stage::Chi) == 4);
    CHECK(r.cycles(Stage::Iota) == 0);
    CHECK(r.count(Opcode::Load) == 1);
    CHECK(r.count(Opcode::Binary) == 1);
    CHECK(r.binary_xor_count == 1);
    CHECK(r.binary_and_count == 0);
    CHECK(r == tally(s, cost));
  }

  SUBCASE("row bounds checked at execution") {
    CommandStream s;
    s.push(Command::unary_not(40, 0), Stage::Chi);
    CHECK_THROWS_AS(execute(s, sub, cost), std::out_of_range);
  }

  SUBCASE("re-executing the same stream from the same image is identical") {
    std::mt19937_64 rng(77);
    TileLayout ly = TileLayout::build(32, 256, 64);
    KeccakState st = oracle::random_state(rng);
    CommandStream s = compile_theta(ly).commands;
    Subarray a(32, 256), b(32, 256);
    write_state(a, ly, st);
    write_state(b, ly, st);
    execute(s, a, cost);
    execute(s, b, cost);
    CHECK(a == b);
  }
}

TEST_CASE("trace format") {
  CommandStream s;
  s.push(Command::binary(BinaryKind::Xor, 25, 0, 5), Stage::Theta);
  s.push(Command::shift(25, 25, 1), Stage::Theta);
  s.push(Command::load(26, 0x8082), Stage::Iota);
  std::string trace = format_trace(s);
  std::istringstream lines(trace);
  std::string l;
  std::getline(lines, l);
  CHECK(l == "0 XOR 25 0 5 theta");
  std::getline(lines, l);
  CHECK(l == "4 SHL 25 25 1 theta");
  std::getline(lines, l);
  CHECK(l == "6 LOAD 26 - 0000000000008082 iota");
}

TEST_CASE("control subarray image") {
  TileLayout scratch = TileLayout::build(32, 256, 64);
  RoundProgram round = compile_round(scratch, 0);

  SUBCASE("pack then fetch reproduces the stream") {
    ControlImage img = store_control(round.stream, 8, 256);
    CHECK(fetch_control(img) == round.stream.commands());
    // 156 four-byte words + one 10-byte LOAD, packed into 32-byte rows
    size_t expected_bytes = 156 * 4 + 10;
    CHECK(img.total_bytes == expected_bytes);
    CHECK(img.rows.size() == (expected_bytes + 31) / 32);
    CHECK(img.fetch_schedule.size() == round.stream.size());
  }

  SUBCASE("empty stream packs to an empty image") {
    ControlImage img = store_control(CommandStream{}, 8, 256);
    CHECK(img.rows.empty());
    CHECK(img.total_bytes == 0);
    CHECK(fetch_control(img).empty());
  }

  SUBCASE("capacity overflow reports required rows") {
    CHECK_THROWS_WITH_AS(store_control(round.stream, 8, 256, 10),
                         doctest::Contains("needs 20 rows"), std::invalid_argument);
    CHECK_NOTHROW(store_control(round.stream, 8, 256, 20));
  }
}
