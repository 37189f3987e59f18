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

#include <span>
#include <string>
#include <vector>

#include "sha3pim/isa.hpp"
#include "sha3pim/keccak.hpp"
#include "sha3pim/layout.hpp"
#include "sha3pim/subarray.hpp"

namespace sha3pim {

// Compiles each round stage into controller commands against a layout.
// Under the default cost model one round is 564 cycles: theta 210 (50 XOR +
// 5 one-bit shifts), rho 50 (25 shifts), pi 0 (map update only), chi 300
// (75 logic ops), iota 4 (free RC load + one XOR).

struct OpCounts {
  int xors = 0;
  int ands = 0;
  int nots = 0;
  int shifts = 0;
  int loads = 0;

  int total() const { return xors + ands + nots + shifts + loads; }
  bool operator==(const OpCounts&) const = default;
};

struct StageSchedule {
  Stage stage = Stage::Theta;
  CommandStream commands;
  int intermediate_live_max = 0;  // peak live intermediate rows
  int in_place_ops = 0;           // commands overwriting one of their sources
  OpCounts ops;
};

StageSchedule compile_theta(const TileLayout& layout);

/// 25 rotations, one per lane, including lane (0,0)'s zero-offset shift so
/// the stage counts 25 commands / 50 cycles. elide_zero_offset drops that
/// command (48 cycles); off by default to keep the published totals.
StageSchedule compile_rho(const TileLayout& layout, bool elide_zero_offset = false);
/// Empty stream; composes the layout map with pi as a side effect.
StageSchedule compile_pi(TileLayout& layout);
StageSchedule compile_chi(const TileLayout& layout);
StageSchedule compile_iota(const TileLayout& layout, int round_index);

/// 17 XORs folding a preloaded message block into the rate lanes through
/// the current lane map. block_index is 1-based; block 0 is written
/// directly into the state rows.
StageSchedule compile_absorb(const TileLayout& layout, uint64_t block_index);

struct RoundProgram {
  CommandStream stream;
  CycleReport cycles;  // static tally; execute() reports the same
};

RoundProgram compile_round(TileLayout& layout, int round_index, const CycleCostModel& cost = {});

/// Full message program: padding, initial row contents, absorb + 24 rounds
/// per block, and where to read the digest afterwards.
struct HashProgram {
  CommandStream stream;
  std::vector<std::pair<int, uint64_t>> initial_rows;  // physical row -> lane value (replicated per tile)
  std::array<int, 4> digest_rows{};                    // lanes (0,0)..(3,0) under the final map
  uint64_t blocks = 0;
  uint64_t state_message_rows = 0;  // 25 or 17*blocks + 8
  CycleReport cycles;
};

HashProgram compile_hash(TileLayout& layout, std::span<const uint8_t> message,
                         const CycleCostModel& cost = {});

// ---------------------------------------------------------------------------
// Schedule audit: structural legality independent of any data values.

/// Checks, per stage run: every source row was initialized (lane row,
/// preloaded message row, intermediate after its first write, or LOAD
/// target); no lane row is read after an earlier command in the same stage
/// overwrote it; message rows are never written. Also measures peak
/// intermediate liveness and in-place counts.
struct AuditReport {
  bool ok = false;
  std::string error;
  std::array<int, kStageCount> live_max{};      // max over runs of each stage
  std::array<int, kStageCount> in_place_min{};  // min over runs (INT_MAX-free: 0 when stage absent)
  std::array<int, kStageCount> in_place_total{};

  int live(Stage s) const { return live_max[static_cast<int>(s)]; }
};

AuditReport audit_stream(const CommandStream& stream, const std::vector<int>& lane_rows,
                         const std::vector<int>& intermediate_rows,
                         const std::vector<int>& message_rows);

// ---------------------------------------------------------------------------
// Simulation glue shared by tests and the CLI.

/// Lane value replicated into every w-bit tile segment of a row.
BitRow replicate_lane(uint64_t value, int cols, int w);

/// Lane value held by `tile` in the given physical row.
uint64_t read_lane(const Subarray& sub, int row, int tile, int w);

/// Loads a state into every tile through the layout's current map.
void write_state(Subarray& sub, const TileLayout& layout, const KeccakState& state);

/// Reads one tile's state back through the layout's current map.
KeccakState read_state(const Subarray& sub, const TileLayout& layout, int tile = 0);

struct SimResult {
  Digest digest{};
  CycleReport cycles;
  uint64_t blocks = 0;
  uint64_t state_message_rows = 0;
  bool tiles_agree = false;  // all tiles computed the same digest
  size_t commands = 0;
};

/// Compiles and executes the full hash on a fresh subarray, returning the
/// digest read from tile 0. Optionally hands back the compiled stream and
/// text trace.
SimResult simulate_hash(std::span<const uint8_t> message, int rows, int cols,
                        const CycleCostModel& cost = {}, CommandStream* stream_out = nullptr,
                        std::string* trace_out = nullptr);

}  // namespace sha3pim
