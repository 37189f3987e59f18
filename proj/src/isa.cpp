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

#include "sha3pim/isa.hpp"

#include <cstdio>
#include <stdexcept>

namespace sha3pim {

namespace {

constexpr int kMinK = 1, kMaxK = 16;

void check_k(int k) {
  if (k < kMinK || k > kMaxK) throw std::invalid_argument("row-index width k out of range");
}

void check_field(uint32_t value, int k, const char* what) {
  if (value >= (uint32_t{1} << k))
    throw std::out_of_range(std::string("encode: ") + what + " overflows a " +
                            std::to_string(k) + "-bit field");
}

// LSB-first bit packing within a growing byte buffer.
struct BitWriter {
  std::vector<uint8_t> bytes;
  size_t bitpos = 0;

  void put(uint64_t value, int nbits) {
    for (int i = 0; i < nbits; ++i, ++bitpos) {
      if (bitpos / 8 == bytes.size()) bytes.push_back(0);
      if ((value >> i) & 1) bytes[bitpos / 8] |= uint8_t(1u << (bitpos % 8));
    }
  }

  void pad_to_byte() { bitpos = (bitpos + 7) & ~size_t{7}; }
};

struct BitReader {
  std::span<const uint8_t> bytes;
  size_t bitpos = 0;

  uint64_t get(int nbits) {
    uint64_t v = 0;
    for (int i = 0; i < nbits; ++i, ++bitpos)
      v |= uint64_t{(bytes[bitpos / 8] >> (bitpos % 8)) & 1u} << i;
    return v;
  }
};

}  // namespace

const char* opcode_name(Opcode op) {
  switch (op) {
    case Opcode::Load: return "LOAD";
    case Opcode::Unary: return "UNARY";
    case Opcode::Shift: return "SHIFT";
    case Opcode::Binary: return "BINARY";
  }
  return "?";
}

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::Theta: return "theta";
    case Stage::Rho: return "rho";
    case Stage::Pi: return "pi";
    case Stage::Chi: return "chi";
    case Stage::Iota: return "iota";
    case Stage::Absorb: return "absorb";
  }
  return "?";
}

Command Command::load(int result_row, uint64_t payload) {
  if (result_row < 0) throw std::invalid_argument("Command: negative row");
  Command c;
  c.opcode = Opcode::Load;
  c.result_row = static_cast<uint16_t>(result_row);
  c.rc_payload = payload;
  return c;
}

Command Command::unary_not(int result_row, int operand_row) {
  if (result_row < 0 || operand_row < 0) throw std::invalid_argument("Command: negative row");
  Command c;
  c.opcode = Opcode::Unary;
  c.result_row = static_cast<uint16_t>(result_row);
  c.operand_row = static_cast<uint16_t>(operand_row);
  return c;
}

Command Command::shift(int result_row, int operand_row, int offset, RotateDir dir) {
  if (result_row < 0 || operand_row < 0) throw std::invalid_argument("Command: negative row");
  if (offset < 0 || offset >= 64) throw std::invalid_argument("Command: shift offset must be 0..63");
  Command c;
  c.opcode = Opcode::Shift;
  c.result_row = static_cast<uint16_t>(result_row);
  c.operand_row = static_cast<uint16_t>(operand_row);
  c.operand2_or_offset = static_cast<uint16_t>(offset);
  c.shift_direction = dir;
  return c;
}

Command Command::binary(BinaryKind kind, int result_row, int a, int b) {
  if (result_row < 0 || a < 0 || b < 0) throw std::invalid_argument("Command: negative row");
  if (a == b) throw std::invalid_argument("Command: BINARY operand rows must be distinct");
  Command c;
  c.opcode = Opcode::Binary;
  c.binary_kind = kind;
  c.result_row = static_cast<uint16_t>(result_row);
  c.operand_row = static_cast<uint16_t>(a);
  c.operand2_or_offset = static_cast<uint16_t>(b);
  return c;
}

std::vector<int> Command::source_rows() const {
  switch (opcode) {
    case Opcode::Load: return {};
    case Opcode::Unary:
    case Opcode::Shift: return {operand_row};
    case Opcode::Binary: return {operand_row, operand2_or_offset};
  }
  return {};
}

bool Command::in_place() const {
  for (int r : source_rows())
    if (r == result_row) return true;
  return false;
}

const char* Command::mnemonic() const {
  switch (opcode) {
    case Opcode::Load: return "LOAD";
    case Opcode::Unary: return "NOT";
    case Opcode::Shift: return shift_direction == RotateDir::Left ? "SHL" : "SHR";
    case Opcode::Binary: return binary_kind == BinaryKind::Xor ? "XOR" : "AND";
  }
  return "?";
}

size_t encoded_size(Opcode op, int k) {
  check_k(k);
  if (op == Opcode::Load) return (2 + k + 7) / 8 + 8;
  return (3 * k + 3 + 7) / 8;
}

std::vector<uint8_t> encode(const Command& cmd, int k) {
  check_k(k);
  check_field(cmd.result_row, k, "result row");
  BitWriter w;
  w.put(static_cast<uint64_t>(cmd.opcode), 2);
  w.put(cmd.result_row, k);
  if (cmd.opcode == Opcode::Load) {
    w.pad_to_byte();
    for (int i = 0; i < 8; ++i) w.put((cmd.rc_payload >> (8 * i)) & 0xFF, 8);
    return w.bytes;
  }
  check_field(cmd.operand_row, k, "operand row");
  w.put(cmd.operand_row, k);
  check_field(cmd.operand2_or_offset, k, "operand2/offset");
  w.put(cmd.operand2_or_offset, k);
  uint64_t flag = cmd.opcode == Opcode::Binary
                      ? static_cast<uint64_t>(cmd.binary_kind)
                      : (cmd.opcode == Opcode::Shift &&
                                 cmd.shift_direction == RotateDir::Right
                             ? 1
                             : 0);
  w.put(flag, 1);
  w.pad_to_byte();
  return w.bytes;
}

DecodeResult decode(std::span<const uint8_t> bytes, int k) {
  check_k(k);
  if (bytes.empty()) throw std::runtime_error("decode: empty input");
  Opcode op = static_cast<Opcode>(bytes[0] & 0x3);
  size_t need = encoded_size(op, k);
  if (bytes.size() < need)
    throw std::runtime_error(std::string("decode: truncated ") + opcode_name(op) +
                             " command (need " + std::to_string(need) + " bytes)");
  BitReader r{bytes.first(need), 0};
  r.get(2);
  uint16_t result = static_cast<uint16_t>(r.get(k));
  Command cmd;
  if (op == Opcode::Load) {
    size_t header_bytes = (2 + k + 7) / 8;
    // padding bits between the header fields and the payload must be zero
    if (r.get(static_cast<int>(header_bytes * 8 - (2 + k))) != 0)
      throw std::runtime_error("decode: nonzero padding bits");
    uint64_t payload = 0;
    for (int i = 0; i < 8; ++i) payload |= r.get(8) << (8 * i);
    cmd = Command::load(result, payload);
  } else {
    uint16_t op1 = static_cast<uint16_t>(r.get(k));
    uint16_t op2 = static_cast<uint16_t>(r.get(k));
    uint64_t flag = r.get(1);
    if (r.get(static_cast<int>(need * 8 - (3 * k + 3))) != 0)
      throw std::runtime_error("decode: nonzero padding bits");
    switch (op) {
      case Opcode::Unary:
        cmd = Command::unary_not(result, op1);
        cmd.operand2_or_offset = op2;  // field is don't-care but preserved
        break;
      case Opcode::Shift:
        cmd = Command::shift(result, op1, op2, flag ? RotateDir::Right : RotateDir::Left);
        break;
      case Opcode::Binary:
        cmd = Command::binary(flag ? BinaryKind::And : BinaryKind::Xor, result, op1, op2);
        break;
      default: break;
    }
  }
  return {cmd, need};
}

void CommandStream::append(const CommandStream& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::vector<Command> CommandStream::commands() const {
  std::vector<Command> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.cmd);
  return out;
}

std::vector<uint8_t> serialize_stream(const CommandStream& stream, int k) {
  check_k(k);
  std::vector<uint8_t> out(kStreamMagic.begin(), kStreamMagic.end());
  out.push_back(kStreamVersion);
  out.push_back(static_cast<uint8_t>(k));
  for (const auto& e : stream) {
    std::vector<uint8_t> enc = encode(e.cmd, k);
    out.insert(out.end(), enc.begin(), enc.end());
  }
  return out;
}

StreamFile parse_stream(std::span<const uint8_t> bytes) {
  if (bytes.size() < 6 || !std::equal(kStreamMagic.begin(), kStreamMagic.end(), bytes.begin()))
    throw std::runtime_error("stream file: bad magic");
  if (bytes[4] != kStreamVersion) throw std::runtime_error("stream file: unsupported version");
  StreamFile f;
  f.k = bytes[5];
  check_k(f.k);
  size_t pos = 6;
  while (pos < bytes.size()) {
    DecodeResult d = decode(bytes.subspan(pos), f.k);
    f.commands.push_back(d.cmd);
    pos += d.bytes_consumed;
  }
  return f;
}

int command_cycles(const Command& cmd, const CycleCostModel& cost) {
  switch (cmd.opcode) {
    case Opcode::Load: return cost.load_cycles;
    case Opcode::Shift: return cost.shift_cycles;
    case Opcode::Unary:
    case Opcode::Binary: return cost.logic_op_cycles;
  }
  return 0;
}

void CycleReport::add(const Command& cmd, Stage stage, const CycleCostModel& cost) {
  int c = command_cycles(cmd, cost);
  stage_cycles[static_cast<int>(stage)] += c;
  total += c;
  opcode_counts[static_cast<int>(cmd.opcode)]++;
  if (cmd.opcode == Opcode::Binary) {
    if (cmd.binary_kind == BinaryKind::Xor)
      binary_xor_count++;
    else
      binary_and_count++;
  }
  commands++;
}

CycleReport& CycleReport::operator+=(const CycleReport& other) {
  for (int i = 0; i < kStageCount; ++i) stage_cycles[i] += other.stage_cycles[i];
  for (int i = 0; i < 4; ++i) opcode_counts[i] += other.opcode_counts[i];
  binary_xor_count += other.binary_xor_count;
  binary_and_count += other.binary_and_count;
  total += other.total;
  commands += other.commands;
  return *this;
}

CycleReport tally(const CommandStream& stream, const CycleCostModel& cost) {
  cost.validate();
  CycleReport r;
  for (const auto& e : stream) r.add(e.cmd, e.stage, cost);
  return r;
}

CycleReport execute(const CommandStream& stream, Subarray& sub, const CycleCostModel& cost) {
  cost.validate();
  CycleReport report;
  for (const auto& [cmd, stage] : stream) {
    switch (cmd.opcode) {
      case Opcode::Unary:
        sub.write_row(cmd.result_row, sub.bitline_op(BitlineOp::Not, cmd.operand_row));
        break;
      case Opcode::Binary:
        sub.write_row(cmd.result_row,
                      sub.bitline_op(cmd.binary_kind == BinaryKind::Xor ? BitlineOp::Xor
                                                                        : BitlineOp::And,
                                     cmd.operand_row, cmd.operand2_or_offset));
        break;
      case Opcode::Shift:
        sub.rotate_segmented(cmd.operand_row, cmd.result_row, cmd.operand2_or_offset,
                             cmd.shift_direction);
        break;
      case Opcode::Load: {
        BitRow row(sub.cols());
        int sw = sub.shifter_width();
        uint64_t payload = sw < 64 ? cmd.rc_payload & ((uint64_t{1} << sw) - 1) : cmd.rc_payload;
        for (int s = 0; s < sub.segments(); ++s) row.deposit64(s * sw, sw, payload);
        sub.write_row(cmd.result_row, row);
        break;
      }
    }
    report.add(cmd, stage, cost);
  }
  return report;
}

std::string format_trace(const CommandStream& stream, const CycleCostModel& cost) {
  cost.validate();
  std::string out;
  uint64_t cycle = 0;
  char line[128];
  for (const auto& [cmd, stage] : stream) {
    switch (cmd.opcode) {
      case Opcode::Load:
        std::snprintf(line, sizeof line, "%llu %s %u - %016llx %s\n",
                      static_cast<unsigned long long>(cycle), cmd.mnemonic(), cmd.result_row,
                      static_cast<unsigned long long>(cmd.rc_payload), stage_name(stage));
        break;
      case Opcode::Unary:
        std::snprintf(line, sizeof line, "%llu %s %u %u - %s\n",
                      static_cast<unsigned long long>(cycle), cmd.mnemonic(), cmd.result_row,
                      cmd.operand_row, stage_name(stage));
        break;
      default:
        std::snprintf(line, sizeof line, "%llu %s %u %u %u %s\n",
                      static_cast<unsigned long long>(cycle), cmd.mnemonic(), cmd.result_row,
                      cmd.operand_row, cmd.operand2_or_offset, stage_name(stage));
        break;
    }
    out += line;
    cycle += command_cycles(cmd, cost);
  }
  return out;
}

ControlImage store_control(const CommandStream& stream, int k, int cols, int max_rows) {
  check_k(k);
  if (cols < 8 || cols % 8 != 0)
    throw std::invalid_argument("store_control: columns must be a positive multiple of 8");
  ControlImage img;
  img.k = k;
  img.cols = cols;
  std::vector<uint8_t> bytes;
  for (const auto& e : stream) {
    std::vector<uint8_t> enc = encode(e.cmd, k);
    img.fetch_schedule.push_back({bytes.size(), enc.size()});
    bytes.insert(bytes.end(), enc.begin(), enc.end());
  }
  img.total_bytes = bytes.size();
  size_t row_bytes = static_cast<size_t>(cols) / 8;
  size_t rows_needed = (bytes.size() + row_bytes - 1) / row_bytes;
  if (max_rows >= 0 && rows_needed > static_cast<size_t>(max_rows))
    throw std::invalid_argument("store_control: stream needs " + std::to_string(rows_needed) +
                                " rows, control subarray has " + std::to_string(max_rows));
  bytes.resize(rows_needed * row_bytes, 0);
  for (size_t r = 0; r < rows_needed; ++r) {
    BitRow row(cols);
    for (size_t b = 0; b < row_bytes; ++b)
      row.deposit64(static_cast<int>(b * 8), 8, bytes[r * row_bytes + b]);
    img.rows.push_back(std::move(row));
  }
  return img;
}

std::vector<Command> fetch_control(const ControlImage& image) {
  size_t row_bytes = static_cast<size_t>(image.cols) / 8;
  std::vector<uint8_t> bytes(image.rows.size() * row_bytes);
  for (size_t r = 0; r < image.rows.size(); ++r)
    for (size_t b = 0; b < row_bytes; ++b)
      bytes[r * row_bytes + b] =
          static_cast<uint8_t>(image.rows[r].extract64(static_cast<int>(b * 8), 8));
  std::vector<Command> out;
  out.reserve(image.fetch_schedule.size());
  for (const auto& slot : image.fetch_schedule) {
    if (slot.byte_offset + slot.length > bytes.size())
      throw std::runtime_error("fetch_control: schedule points past the image");
    DecodeResult d = decode(std::span<const uint8_t>(bytes).subspan(slot.byte_offset, slot.length),
                            image.k);
    out.push_back(d.cmd);
  }
  return out;
}

}  // namespace sha3pim
