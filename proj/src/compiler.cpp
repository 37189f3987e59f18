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

#include "sha3pim/compiler.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace sha3pim {

namespace {

OpCounts count_ops(const CommandStream& s) {
  OpCounts c;
  for (const auto& e : s) {
    switch (e.cmd.opcode) {
      case Opcode::Load: c.loads++; break;
      case Opcode::Unary: c.nots++; break;
      case Opcode::Shift: c.shifts++; break;
      case Opcode::Binary:
        (e.cmd.binary_kind == BinaryKind::Xor ? c.xors : c.ands)++;
        break;
    }
  }
  return c;
}

StageSchedule finish_schedule(Stage stage, CommandStream cmds, const TileLayout& ly) {
  StageSchedule s;
  s.stage = stage;
  s.commands = std::move(cmds);
  s.ops = count_ops(s.commands);
  AuditReport audit = audit_stream(s.commands, ly.lane_rows(), ly.intermediate_rows(),
                                   ly.message_rows());
  if (!audit.ok) throw std::logic_error("compiled schedule failed its own audit: " + audit.error);
  s.intermediate_live_max = audit.live(stage);
  s.in_place_ops = audit.in_place_total[static_cast<int>(stage)];
  return s;
}

}  // namespace

StageSchedule compile_theta(const TileLayout& ly) {
  CommandStream s;
  auto I = [&](int i) { return ly.intermediate_row(i); };
  // Sheet parities C[x] into intermediates 0-4, accumulating in place.
  for (int x = 0; x < 5; ++x) {
    s.push(Command::binary(BinaryKind::Xor, I(x), ly.lane_row(x, 0), ly.lane_row(x, 1)),
           Stage::Theta);
    for (int y = 2; y < 5; ++y)
      s.push(Command::binary(BinaryKind::Xor, I(x), I(x), ly.lane_row(x, y)), Stage::Theta);
  }
  // One sheet at a time: rotate C[x+1] into the spare row, fold in C[x-1],
  // then update the whole sheet before the spare row is reused.
  for (int x = 0; x < 5; ++x) {
    s.push(Command::shift(I(5), I((x + 1) % 5), 1, RotateDir::Left), Stage::Theta);
    s.push(Command::binary(BinaryKind::Xor, I(5), I(5), I((x + 4) % 5)), Stage::Theta);
    for (int y = 0; y < 5; ++y)
      s.push(Command::binary(BinaryKind::Xor, ly.lane_row(x, y), ly.lane_row(x, y), I(5)),
             Stage::Theta);
  }
  return finish_schedule(Stage::Theta, std::move(s), ly);
}

StageSchedule compile_rho(const TileLayout& ly, bool elide_zero_offset) {
  RhoOffsets r = generate_rho_offsets(ly.w());
  CommandStream s;
  for (int i = 0; i < 25; ++i) {
    int x = i % 5, y = i / 5;
    if (elide_zero_offset && r[x][y] == 0) continue;
    int row = ly.lane_row(x, y);
    s.push(Command::shift(row, row, r[x][y], RotateDir::Left), Stage::Rho);
  }
  return finish_schedule(Stage::Rho, std::move(s), ly);
}

StageSchedule compile_pi(TileLayout& ly) {
  ly.apply_pi_remap();
  StageSchedule s;
  s.stage = Stage::Pi;
  return s;
}

StageSchedule compile_chi(const TileLayout& ly) {
  CommandStream s;
  auto I = [&](int i) { return ly.intermediate_row(i); };
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x)
      s.push(Command::unary_not(I(x), ly.lane_row((x + 1) % 5, y)), Stage::Chi);
    for (int x = 0; x < 5; ++x)
      s.push(Command::binary(BinaryKind::And, I(x), I(x), ly.lane_row((x + 2) % 5, y)),
             Stage::Chi);
    // Lane rows of this plane are only written now, after every read of
    // their original values.
    for (int x = 0; x < 5; ++x)
      s.push(Command::binary(BinaryKind::Xor, ly.lane_row(x, y), ly.lane_row(x, y), I(x)),
             Stage::Chi);
  }
  return finish_schedule(Stage::Chi, std::move(s), ly);
}

StageSchedule compile_iota(const TileLayout& ly, int round_index) {
  if (round_index < 0 || round_index >= num_rounds(ly.w()))
    throw std::out_of_range("compile_iota: round index out of range");
  uint64_t rc = kRoundConstants[round_index];
  if (ly.w() < 64) rc &= (uint64_t{1} << ly.w()) - 1;
  CommandStream s;
  s.push(Command::load(ly.intermediate_row(0), rc), Stage::Iota);
  s.push(Command::binary(BinaryKind::Xor, ly.lane_row(0, 0), ly.lane_row(0, 0),
                         ly.intermediate_row(0)),
         Stage::Iota);
  return finish_schedule(Stage::Iota, std::move(s), ly);
}

StageSchedule compile_absorb(const TileLayout& ly, uint64_t block_index) {
  CommandStream s;
  for (int j = 0; j < TileLayout::kBlockLanes; ++j) {
    int lane = ly.lane_row(j % 5, j / 5);
    s.push(Command::binary(BinaryKind::Xor, lane, lane, ly.message_row(block_index, j)),
           Stage::Absorb);
  }
  return finish_schedule(Stage::Absorb, std::move(s), ly);
}

RoundProgram compile_round(TileLayout& ly, int round_index, const CycleCostModel& cost) {
  RoundProgram p;
  p.stream.append(compile_theta(ly).commands);
  p.stream.append(compile_rho(ly).commands);
  compile_pi(ly);
  p.stream.append(compile_chi(ly).commands);
  p.stream.append(compile_iota(ly, round_index).commands);
  p.cycles = tally(p.stream, cost);
  return p;
}

HashProgram compile_hash(TileLayout& ly, std::span<const uint8_t> message,
                         const CycleCostModel& cost) {
  if (ly.w() != 64) throw std::invalid_argument("compile_hash: needs 64-bit lanes");
  std::vector<uint8_t> padded = sha3_pad(message);
  uint64_t blocks = padded.size() / kRateBytes;
  ly.reserve_message_rows(blocks);  // throws when the subarray is too short

  HashProgram p;
  p.blocks = blocks;
  p.state_message_rows = capacity(message.size() * 8).rows_needed;

  auto block_lane = [&](uint64_t block, int j) {
    uint64_t v = 0;
    for (int b = 0; b < 8; ++b)
      v |= uint64_t{padded[block * kRateBytes + 8 * j + b]} << (8 * b);
    return v;
  };

  // Block 0 becomes the initial state (rate lanes; capacity lanes zero);
  // later blocks are preloaded into their 17-row groups.
  for (int i = 0; i < 25; ++i)
    p.initial_rows.push_back({ly.lane_row(i % 5, i / 5),
                              i < TileLayout::kBlockLanes ? block_lane(0, i) : 0});
  for (uint64_t b = 1; b < blocks; ++b)
    for (int j = 0; j < TileLayout::kBlockLanes; ++j)
      p.initial_rows.push_back({ly.message_row(b, j), block_lane(b, j)});

  int rounds = num_rounds(ly.w());
  for (uint64_t b = 0; b < blocks; ++b) {
    if (b >= 1) p.stream.append(compile_absorb(ly, b).commands);
    for (int r = 0; r < rounds; ++r) p.stream.append(compile_round(ly, r, cost).stream);
  }
  for (int i = 0; i < 4; ++i) p.digest_rows[i] = ly.lane_row(i, 0);
  p.cycles = tally(p.stream, cost);
  return p;
}

// ---------------------------------------------------------------------------

AuditReport audit_stream(const CommandStream& stream, const std::vector<int>& lane_rows,
                         const std::vector<int>& intermediate_rows,
                         const std::vector<int>& message_rows) {
  AuditReport rep;
  rep.in_place_min.fill(0);
  std::set<int> lanes(lane_rows.begin(), lane_rows.end());
  std::set<int> inters(intermediate_rows.begin(), intermediate_rows.end());
  std::set<int> messages(message_rows.begin(), message_rows.end());
  std::set<int> initialized = lanes;
  initialized.insert(messages.begin(), messages.end());

  auto fail = [&](const std::string& why) {
    rep.ok = false;
    rep.error = why;
    return rep;
  };

  size_t i = 0;
  std::array<bool, kStageCount> seen{};
  while (i < stream.size()) {
    Stage stage = stream[i].stage;
    size_t run_end = i;
    while (run_end < stream.size() && stream[run_end].stage == stage) ++run_end;
    int sidx = static_cast<int>(stage);

    std::set<int> lanes_written;
    int in_place = 0;
    // Liveness of intermediates: a write opens an interval that closes at
    // the last read before the next write (or at the write itself if the
    // value is never read).
    std::map<int, std::vector<std::pair<size_t, size_t>>> intervals;  // row -> [(start, end)]
    for (size_t j = i; j < run_end; ++j) {
      const Command& cmd = stream[j].cmd;
      for (int src : cmd.source_rows()) {
        if (!initialized.count(src))
          return fail("command " + std::to_string(j) + " reads uninitialized row " +
                      std::to_string(src));
        if (lanes_written.count(src))
          return fail("command " + std::to_string(j) + " reads lane row " + std::to_string(src) +
                      " after the " + std::string(stage_name(stage)) + " stage overwrote it");
        if (inters.count(src) && !intervals[src].empty()) intervals[src].back().second = j;
      }
      if (messages.count(cmd.result_row))
        return fail("command " + std::to_string(j) + " writes message row " +
                    std::to_string(cmd.result_row));
      if (cmd.in_place()) ++in_place;
      if (lanes.count(cmd.result_row)) lanes_written.insert(cmd.result_row);
      if (inters.count(cmd.result_row)) intervals[cmd.result_row].push_back({j, j});
      initialized.insert(cmd.result_row);
    }

    int live_max = 0;
    for (size_t j = i; j < run_end; ++j) {
      int live = 0;
      for (const auto& [row, ivs] : intervals)
        for (const auto& [b, e] : ivs)
          if (b <= j && j <= e) {
            ++live;
            break;
          }
      live_max = std::max(live_max, live);
    }
    rep.live_max[sidx] = std::max(rep.live_max[sidx], live_max);
    rep.in_place_total[sidx] += in_place;
    rep.in_place_min[sidx] = seen[sidx] ? std::min(rep.in_place_min[sidx], in_place) : in_place;
    seen[sidx] = true;
    i = run_end;
  }
  rep.ok = true;
  return rep;
}

// ---------------------------------------------------------------------------

BitRow replicate_lane(uint64_t value, int cols, int w) {
  if (w < 1 || w > 64 || cols % w != 0)
    throw std::invalid_argument("replicate_lane: bad lane width");
  if (w < 64) value &= (uint64_t{1} << w) - 1;
  BitRow row(cols);
  for (int s = 0; s < cols / w; ++s) row.deposit64(s * w, w, value);
  return row;
}

uint64_t read_lane(const Subarray& sub, int row, int tile, int w) {
  if (tile < 0 || tile >= sub.cols() / w) throw std::out_of_range("read_lane: bad tile");
  return sub.read_row(row).extract64(tile * w, w);
}

void write_state(Subarray& sub, const TileLayout& ly, const KeccakState& state) {
  if (state.w != ly.w()) throw std::invalid_argument("write_state: lane width mismatch");
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      sub.write_row(ly.lane_row(x, y), replicate_lane(state.lane(x, y), sub.cols(), ly.w()));
}

KeccakState read_state(const Subarray& sub, const TileLayout& ly, int tile) {
  KeccakState s = KeccakState::zero(ly.w());
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) s.lane(x, y) = read_lane(sub, ly.lane_row(x, y), tile, ly.w());
  return s;
}

SimResult simulate_hash(std::span<const uint8_t> message, int rows, int cols,
                        const CycleCostModel& cost, CommandStream* stream_out,
                        std::string* trace_out) {
  TileLayout ly = TileLayout::build(rows, cols, 64);
  HashProgram prog = compile_hash(ly, message, cost);

  Subarray sub(rows, cols, 64);
  for (const auto& [row, value] : prog.initial_rows)
    sub.write_row(row, replicate_lane(value, cols, 64));

  SimResult res;
  res.cycles = execute(prog.stream, sub, cost);
  res.blocks = prog.blocks;
  res.state_message_rows = prog.state_message_rows;
  res.commands = prog.stream.size();

  auto digest_from_tile = [&](int tile) {
    Digest d{};
    for (int i = 0; i < 4; ++i) {
      uint64_t v = read_lane(sub, prog.digest_rows[i], tile, 64);
      for (int b = 0; b < 8; ++b) d[8 * i + b] = static_cast<uint8_t>(v >> (8 * b));
    }
    return d;
  };
  res.digest = digest_from_tile(0);
  res.tiles_agree = true;
  for (int t = 1; t < ly.tile_count(); ++t)
    if (digest_from_tile(t) != res.digest) res.tiles_agree = false;

  if (stream_out) *stream_out = prog.stream;
  if (trace_out) *trace_out = format_trace(prog.stream, cost);
  return res;
}

}  // namespace sha3pim
