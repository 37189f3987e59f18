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

#include <optional>
#include <string>
#include <vector>

#include "sha3pim/bitrow.hpp"

namespace sha3pim {

// Functional model of one SRAM-style subarray with multi-row-activation
// bitline logic and a barrel shifter on the read path. The model is
// bit-exact; cycle costs are charged by the command executor, not here.

enum class BitlineOp { And, Nor, Xor, Not };
enum class RotateDir { Left, Right };

const char* bitline_op_name(BitlineOp op);

/// Per-command cycle charges. A logic op is three bitline accesses plus one
/// write-back; a shift is a read through the shifter plus a write. RC loads
/// ride on the command broadcast and default to free; set load_cycles to 1
/// to charge them as an extra access instead.
struct CycleCostModel {
  int logic_op_cycles = 4;
  int shift_cycles = 2;
  int load_cycles = 0;

  void validate() const;
};

class Subarray {
 public:
  /// Minimum geometry is 32 x 64; cols must be a multiple of the shifter
  /// width (one shifter segment per tile column slice).
  Subarray(int rows, int cols, int shifter_width = 64);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int shifter_width() const { return shifter_width_; }
  int segments() const { return cols_ / shifter_width_; }

  void write_row(int row, const BitRow& data);
  BitRow read_row(int row) const;  // non-destructive

  /// Multi-row-activation logic. Not takes a single row (sensed on the
  /// complement bitline, i.e. single-row NOR); And/Nor/Xor take two
  /// distinct rows. Returns the per-column result without writing it;
  /// pairing with write_row is the controller's job.
  BitRow bitline_op(BitlineOp kind, int row_a, std::optional<int> row_b = std::nullopt) const;

  /// Rotates every shifter-width segment of src_row by `offset` in the
  /// given direction and writes the result to dst_row (src may equal dst;
  /// read-then-write). Left moves bit b to bit (b + offset) mod width.
  void rotate_segmented(int src_row, int dst_row, int offset, RotateDir dir);

  /// One hex line per row (cols/4 chars), for trace diffing.
  std::string dump_hex() const;

  bool operator==(const Subarray&) const = default;

 private:
  void check_row(int row) const;

  int rows_ = 0;
  int cols_ = 0;
  int shifter_width_ = 0;
  int words_per_row_ = 0;
  std::vector<uint64_t> cells_;  // row-major
};

}  // namespace sha3pim
