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

#include "sha3pim/subarray.hpp"

#include <stdexcept>

namespace sha3pim {

const char* bitline_op_name(BitlineOp op) {
  switch (op) {
    case BitlineOp::And: return "AND";
    case BitlineOp::Nor: return "NOR";
    case BitlineOp::Xor: return "XOR";
    case BitlineOp::Not: return "NOT";
  }
  return "?";
}

void CycleCostModel::validate() const {
  if (logic_op_cycles < 0 || shift_cycles < 0 || load_cycles < 0)
    throw std::invalid_argument("CycleCostModel: cycle costs must be non-negative");
}

Subarray::Subarray(int rows, int cols, int shifter_width)
    : rows_(rows), cols_(cols), shifter_width_(shifter_width) {
  if (rows < 32) throw std::invalid_argument("Subarray: minimum 32 rows");
  if (cols < 64) throw std::invalid_argument("Subarray: minimum 64 columns");
  if (shifter_width < 1 || shifter_width > 64)
    throw std::invalid_argument("Subarray: shifter width must be 1..64");
  if (cols % shifter_width != 0)
    throw std::invalid_argument("Subarray: columns must be a multiple of the shifter width");
  words_per_row_ = (cols + 63) / 64;
  cells_.assign(static_cast<size_t>(rows) * words_per_row_, 0);
}

void Subarray::check_row(int row) const {
  if (row < 0 || row >= rows_) throw std::out_of_range("Subarray: row index out of range");
}

void Subarray::write_row(int row, const BitRow& data) {
  check_row(row);
  if (data.size() != cols_) throw std::invalid_argument("Subarray: row data width mismatch");
  std::copy(data.words().begin(), data.words().end(),
            cells_.begin() + static_cast<size_t>(row) * words_per_row_);
}

BitRow Subarray::read_row(int row) const {
  check_row(row);
  BitRow out(cols_);
  auto base = cells_.begin() + static_cast<size_t>(row) * words_per_row_;
  std::copy(base, base + words_per_row_, out.words().begin());
  return out;
}

BitRow Subarray::bitline_op(BitlineOp kind, int row_a, std::optional<int> row_b) const {
  check_row(row_a);
  if (kind == BitlineOp::Not) {
    if (row_b) throw std::invalid_argument("bitline_op: NOT takes a single row");
  } else {
    if (!row_b) throw std::invalid_argument("bitline_op: missing second operand");
    check_row(*row_b);
    if (*row_b == row_a)
      throw std::invalid_argument("bitline_op: two-operand ops need distinct rows");
  }
  BitRow out(cols_);
  const uint64_t* a = &cells_[static_cast<size_t>(row_a) * words_per_row_];
  const uint64_t* b = row_b ? &cells_[static_cast<size_t>(*row_b) * words_per_row_] : nullptr;
  for (int i = 0; i < words_per_row_; ++i) {
    switch (kind) {
      case BitlineOp::And: out.words()[i] = a[i] & b[i]; break;
      case BitlineOp::Nor: out.words()[i] = ~(a[i] | b[i]); break;
      case BitlineOp::Xor: out.words()[i] = a[i] ^ b[i]; break;
      case BitlineOp::Not: out.words()[i] = ~a[i]; break;
    }
  }
  out.mask_tail();
  return out;
}

void Subarray::rotate_segmented(int src_row, int dst_row, int offset, RotateDir dir) {
  check_row(src_row);
  check_row(dst_row);
  if (offset < 0 || offset >= shifter_width_)
    throw std::out_of_range("rotate_segmented: offset must be below the shifter width");
  int sw = shifter_width_;
  int left = dir == RotateDir::Left ? offset : (sw - offset) % sw;
  BitRow src = read_row(src_row);
  BitRow dst(cols_);
  for (int s = 0; s < segments(); ++s) {
    uint64_t v = src.extract64(s * sw, sw);
    uint64_t r = left == 0 ? v : ((v << left) | (v >> (sw - left)));
    if (sw < 64) r &= (uint64_t{1} << sw) - 1;
    dst.deposit64(s * sw, sw, r);
  }
  write_row(dst_row, dst);
}

std::string Subarray::dump_hex() const {
  std::string out;
  out.reserve(static_cast<size_t>(rows_) * (cols_ / 4 + 1));
  for (int r = 0; r < rows_; ++r) {
    out += read_row(r).to_hex();
    out += '\n';
  }
  return out;
}

}  // namespace sha3pim
