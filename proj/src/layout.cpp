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

#include "sha3pim/layout.hpp"

#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "sha3pim/keccak.hpp"

namespace sha3pim {

TileLayout TileLayout::build(int rows, int cols, int w) {
  if (!lane_width_valid(w)) throw std::invalid_argument("TileLayout: bad lane width");
  if (rows < kLaneRows + kIntermediateRows + 1)
    throw std::invalid_argument("TileLayout: subarray too small, need at least 32 rows");
  if (cols < w || cols % w != 0)
    throw std::invalid_argument("TileLayout: columns must be a non-zero multiple of the lane width");
  TileLayout ly;
  ly.rows_ = rows;
  ly.cols_ = cols;
  ly.w_ = w;
  std::iota(ly.perm_map_.begin(), ly.perm_map_.end(), 0);
  return ly;
}

int TileLayout::lane_row(int x, int y) const {
  if (x < 0 || x >= 5 || y < 0 || y >= 5)
    throw std::out_of_range("TileLayout: lane coordinates out of range");
  return perm_map_[x + 5 * y];
}

int TileLayout::intermediate_row(int i) const {
  if (i < 0 || i >= kIntermediateRows)
    throw std::out_of_range("TileLayout: intermediate index out of range");
  return kLaneRows + i;
}

std::vector<int> TileLayout::lane_rows() const {
  return std::vector<int>(perm_map_.begin(), perm_map_.end());
}

std::vector<int> TileLayout::intermediate_rows() const {
  std::vector<int> out(kIntermediateRows);
  std::iota(out.begin(), out.end(), kLaneRows);
  return out;
}

void TileLayout::apply_pi_remap() {
  std::array<int, 25> next{};
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      next[y + 5 * ((2 * x + 3 * y) % 5)] = perm_map_[x + 5 * y];
  perm_map_ = next;
  pi_depth_ = (pi_depth_ + 1) % 24;  // the 24 non-origin lanes form one cycle
}

void TileLayout::reserve_message_rows(uint64_t blocks) {
  if (blocks < 1) throw std::invalid_argument("reserve_message_rows: need at least one block");
  uint64_t needed = static_cast<uint64_t>(kLaneRows + kIntermediateRows) + (blocks - 1) * kBlockLanes;
  if (needed > static_cast<uint64_t>(rows_))
    throw std::invalid_argument("message exceeds subarray capacity: needs " +
                                std::to_string(needed) + " rows, have " + std::to_string(rows_));
  message_blocks_ = blocks;
}

int TileLayout::message_row(uint64_t block_index, int lane_index) const {
  if (block_index < 1 || block_index >= message_blocks_)
    throw std::out_of_range("message_row: block index out of range");
  if (lane_index < 0 || lane_index >= kBlockLanes)
    throw std::out_of_range("message_row: lane index out of range");
  return kLaneRows + kIntermediateRows + static_cast<int>(block_index - 1) * kBlockLanes + lane_index;
}

std::vector<int> TileLayout::message_rows() const {
  std::vector<int> out;
  for (uint64_t b = 1; b < message_blocks_; ++b)
    for (int l = 0; l < kBlockLanes; ++l) out.push_back(message_row(b, l));
  return out;
}

uint64_t TileLayout::messages_per_tile(uint64_t message_bits) const {
  uint64_t per_msg = capacity(message_bits).rows_needed;
  return static_cast<uint64_t>(rows_ - kIntermediateRows) / per_msg;
}

std::string TileLayout::to_json() const {
  nlohmann::json j;
  j["rows"] = rows_;
  j["cols"] = cols_;
  j["w"] = w_;
  j["tile_count"] = tile_count();
  j["pi_depth"] = pi_depth_;
  j["perm_map"] = perm_map_;  // logical x + 5y -> physical row
  j["intermediate_rows"] = intermediate_rows();
  j["message_rows"] = message_rows();
  auto tiles = nlohmann::json::array();
  for (int t = 0; t < tile_count(); ++t)
    tiles.push_back({{"first_col", t * w_}, {"last_col", (t + 1) * w_ - 1}});
  j["tiles"] = tiles;
  return j.dump(2);
}

TileLayout TileLayout::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  TileLayout ly = build(j.at("rows").get<int>(), j.at("cols").get<int>(), j.at("w").get<int>());
  auto map = j.at("perm_map").get<std::vector<int>>();
  if (map.size() != 25) throw std::invalid_argument("layout JSON: perm_map must have 25 entries");
  std::array<bool, 25> seen{};
  for (int row : map) {
    if (row < 0 || row >= 25 || seen[row])
      throw std::invalid_argument("layout JSON: perm_map is not a bijection over rows 0-24");
    seen[row] = true;
  }
  std::copy(map.begin(), map.end(), ly.perm_map_.begin());
  ly.pi_depth_ = j.value("pi_depth", 0);
  if (j.contains("message_rows"))
    ly.message_blocks_ = 1 + j["message_rows"].size() / kBlockLanes;
  return ly;
}

CapacityReport capacity(uint64_t message_bits) {
  CapacityReport r;
  r.blocks = padded_block_count(message_bits);
  r.rows_needed = r.blocks == 1 ? TileLayout::kLaneRows
                                : 17 * r.blocks + 8;  // rate lanes per block + shared capacity lanes
  r.parallel_messages = 0;
  return r;
}

CapacityReport capacity(uint64_t message_bits, const TileLayout& layout) {
  CapacityReport r = capacity(message_bits);
  r.parallel_messages = layout.tile_count() * layout.messages_per_tile(message_bits);
  return r;
}

uint64_t parallel_messages(int banks, int subarrays_per_2banks, int cols, int w) {
  if (banks < 1 || cols < 1 || w < 1)
    throw std::invalid_argument("parallel_messages: arguments must be positive");
  if (subarrays_per_2banks < 2)
    throw std::invalid_argument("parallel_messages: need at least 2 subarrays (one stores control)");
  uint64_t tiles = (static_cast<uint64_t>(cols) + w - 1) / w;
  return static_cast<uint64_t>(banks) * (subarrays_per_2banks - 1) * tiles;
}

}  // namespace sha3pim
