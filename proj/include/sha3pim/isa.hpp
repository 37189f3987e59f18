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

#include "sha3pim/subarray.hpp"

namespace sha3pim {

// Controller command set and its bit-exact serialized form.
//
// A command word for a row-index width of k bits:
//   bits [0:1]    opcode (LOAD=00, UNARY=01, SHIFT=10, BINARY=11)
//   bits [2:k+1]  result row
//   bits [k+2:2k+1]   operand row        (UNARY / SHIFT / BINARY)
//   bits [2k+2:3k+1]  operand2 / offset  (BINARY / SHIFT)
//   bit  3k+2     BINARY: 0=XOR 1=AND; SHIFT: 0=left 1=right
// Fields are packed LSB-first ("little-endian-bit-first") and each command
// is padded with zero bits to a byte boundary. LOAD stops after the result
// row and is followed by its 64-bit payload, little-endian. For k=8 a
// non-LOAD command is 27 bits in 4 bytes; LOAD is 2 header bytes + 8.

enum class Opcode : uint8_t { Load = 0, Unary = 1, Shift = 2, Binary = 3 };
enum class BinaryKind : uint8_t { Xor = 0, And = 1 };
enum class Stage : uint8_t { Theta = 0, Rho, Pi, Chi, Iota, Absorb };

inline constexpr int kStageCount = 6;

const char* opcode_name(Opcode op);
const char* stage_name(Stage s);

struct Command {
  Opcode opcode = Opcode::Load;
  uint16_t result_row = 0;
  uint16_t operand_row = 0;         // UNARY / SHIFT / BINARY
  uint16_t operand2_or_offset = 0;  // BINARY second row / SHIFT offset
  BinaryKind binary_kind = BinaryKind::Xor;
  RotateDir shift_direction = RotateDir::Left;
  uint64_t rc_payload = 0;          // LOAD

  static Command load(int result_row, uint64_t payload);
  static Command unary_not(int result_row, int operand_row);
  static Command shift(int result_row, int operand_row, int offset,
                       RotateDir dir = RotateDir::Left);
  static Command binary(BinaryKind kind, int result_row, int a, int b);

  /// Source rows read by this command (none for LOAD).
  std::vector<int> source_rows() const;

  /// True when the result overwrites one of the command's own sources.
  bool in_place() const;

  /// Mnemonic used by the text trace (LOAD, NOT, SHL, SHR, XOR, AND).
  const char* mnemonic() const;

  bool operator==(const Command&) const = default;
};

/// Serialized size in bytes of one command at row-index width k.
size_t encoded_size(Opcode op, int k);

std::vector<uint8_t> encode(const Command& cmd, int k);

struct DecodeResult {
  Command cmd;
  size_t bytes_consumed = 0;
};

/// Decodes one command from the front of `bytes`. Throws on a truncated
/// word or payload and on nonzero padding bits.
DecodeResult decode(std::span<const uint8_t> bytes, int k);

/// Ordered command sequence with a stage tag per command for cycle
/// accounting. Immutable once built by the compiler.
class CommandStream {
 public:
  struct Entry {
    Command cmd;
    Stage stage;
    bool operator==(const Entry&) const = default;
  };

  void push(Command cmd, Stage stage) { entries_.push_back({cmd, stage}); }
  void append(const CommandStream& other);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  std::vector<Command> commands() const;

  bool operator==(const CommandStream&) const = default;

 private:
  std::vector<Entry> entries_;
};

// Binary stream file: magic "INHL", version byte, k byte, then the
// serialized commands back to back.
inline constexpr std::array<uint8_t, 4> kStreamMagic = {'I', 'N', 'H', 'L'};
inline constexpr uint8_t kStreamVersion = 1;

struct StreamFile {
  int k = 8;
  std::vector<Command> commands;
};

std::vector<uint8_t> serialize_stream(const CommandStream& stream, int k);
StreamFile parse_stream(std::span<const uint8_t> bytes);

/// Per-stage cycle and per-opcode operation accounting. total is always the
/// sum of the stage buckets.
struct CycleReport {
  std::array<uint64_t, kStageCount> stage_cycles{};
  std::array<uint64_t, 4> opcode_counts{};  // by Opcode
  uint64_t binary_xor_count = 0;
  uint64_t binary_and_count = 0;
  uint64_t total = 0;
  uint64_t commands = 0;

  uint64_t cycles(Stage s) const { return stage_cycles[static_cast<int>(s)]; }
  uint64_t count(Opcode op) const { return opcode_counts[static_cast<int>(op)]; }

  void add(const Command& cmd, Stage stage, const CycleCostModel& cost);
  CycleReport& operator+=(const CycleReport& other);
  bool operator==(const CycleReport&) const = default;
};

int command_cycles(const Command& cmd, const CycleCostModel& cost);

/// Static cycle accounting of a stream; identical to what execute() reports.
CycleReport tally(const CommandStream& stream, const CycleCostModel& cost = {});

/// Applies the stream to the subarray in order, broadcasting each command
/// across all tiles, and charges cycles. UNARY senses the complement and
/// writes it back; BINARY activates both operand rows; SHIFT runs the
/// operand through the barrel shifter into the result row; LOAD replicates
/// its payload into every shifter-width segment of the result row.
CycleReport execute(const CommandStream& stream, Subarray& sub, const CycleCostModel& cost = {});

/// One line per command: `cycle_start opcode result op1 op2/off stage`.
std::string format_trace(const CommandStream& stream, const CycleCostModel& cost = {});

/// Serialized commands packed row-major into a control-subarray image.
struct ControlImage {
  struct Slot {
    size_t byte_offset = 0;  // into the flattened image
    size_t length = 0;
  };

  int k = 8;
  int cols = 0;
  size_t total_bytes = 0;
  std::vector<BitRow> rows;
  std::vector<Slot> fetch_schedule;  // one per command, in issue order
};

/// Packs the stream into rows of `cols` bits. With max_rows >= 0, throws if
/// the image does not fit, reporting the required row count.
ControlImage store_control(const CommandStream& stream, int k, int cols, int max_rows = -1);

/// Replays the fetch schedule, reproducing the stored command sequence.
std::vector<Command> fetch_control(const ControlImage& image);

}  // namespace sha3pim
