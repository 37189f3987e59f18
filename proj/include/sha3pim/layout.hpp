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
#include <string>
#include <vector>

namespace sha3pim {

// Lane-per-row placement: one w-bit lane per subarray row, one state per
// w-column tile, all tiles sharing the same row indices. The logical->
// physical lane map makes the pi permutation a controller-side remap with
// no data movement.

/// Row budget for a message, before the 6 shared intermediate rows.
struct CapacityReport {
  uint64_t rows_needed = 0;       // 25 single-block, else 17*blocks + 8
  uint64_t blocks = 0;            // 1088-bit rate blocks after padding
  uint64_t parallel_messages = 0; // copies a given subarray can hold; 0 = no geometry context
};

class TileLayout {
 public:
  static constexpr int kLaneRows = 25;
  static constexpr int kIntermediateRows = 6;
  static constexpr int kBlockLanes = 17;  // 1088 / 64

  /// Lane rows 0-24 (lane (x,y) starts at row x + 5y), intermediates 25-30.
  /// Requires rows >= 32, cols >= w, cols % w == 0.
  static TileLayout build(int rows, int cols, int w = 64);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int w() const { return w_; }
  int tile_count() const { return cols_ / w_; }

  /// Physical row currently holding logical lane (x, y).
  int lane_row(int x, int y) const;

  int intermediate_row(int i) const;

  std::vector<int> lane_rows() const;
  std::vector<int> intermediate_rows() const;

  /// Composes the lane map with pi: logical (y, 2x+3y) now resolves to the
  /// physical row that held (x, y). No rows are touched and no cycles are
  /// charged; the map stays a bijection.
  void apply_pi_remap();

  /// Number of pi compositions applied so far (mod the permutation order).
  int pi_depth() const { return pi_depth_; }

  /// Reserves 17-row groups for message blocks 1..blocks-1 (block 0 is
  /// absorbed directly into the state rows). Throws if the subarray is too
  /// short; the message reports the required row count.
  void reserve_message_rows(uint64_t blocks);

  uint64_t message_blocks() const { return message_blocks_; }

  /// Physical row of lane `lane_index` (0-16) of message block `block_index`
  /// (1-based; block 0 has no message rows).
  int message_row(uint64_t block_index, int lane_index) const;

  std::vector<int> message_rows() const;

  /// Storage capacity of one tile for same-sized messages sharing this
  /// tile's 6-row intermediate pool.
  uint64_t messages_per_tile(uint64_t message_bits) const;

  /// JSON dump (perm_map, row assignments, tile boundaries) for the trace
  /// tooling.
  std::string to_json() const;

  /// Rebuilds a layout from its to_json() dump; validates the map is a
  /// bijection over rows 0-24.
  static TileLayout from_json(const std::string& text);

 private:
  TileLayout() = default;

  int rows_ = 0, cols_ = 0, w_ = 64;
  int pi_depth_ = 0;
  uint64_t message_blocks_ = 1;
  std::array<int, 25> perm_map_{};  // logical x + 5y -> physical row
};

/// Row budget from the message length alone (bits; byte-aligned).
CapacityReport capacity(uint64_t message_bits);

/// As above, plus how many such messages the layout's subarray can hold.
CapacityReport capacity(uint64_t message_bits, const TileLayout& layout);

/// b * (n - 1) * ceil(c / w): messages hashable in parallel across b banks
/// of n subarrays per two banks (one subarray holds control), c columns,
/// w-bit lanes. Requires n >= 2.
uint64_t parallel_messages(int banks, int subarrays_per_2banks, int cols, int w);

}  // namespace sha3pim
