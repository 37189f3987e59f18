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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sha3pim {

/// Fixed-width bit vector backed by 64-bit words. Bit i of a row maps to
/// column i of a subarray; bytes (for hex dumps and serialization) follow
/// the little-endian convention where byte j holds bits 8j..8j+7, LSB first.
class BitRow {
 public:
  BitRow() = default;

  explicit BitRow(int nbits) : bits_(nbits), words_((nbits + 63) / 64, 0) {
    if (nbits <= 0) throw std::invalid_argument("BitRow: width must be positive");
  }

  int size() const { return bits_; }

  bool get(int i) const {
    check(i);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(int i, bool v) {
    check(i);
    uint64_t m = uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }

  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  /// Reads `width` bits (<= 64) starting at `bit_offset`.
  uint64_t extract64(int bit_offset, int width) const {
    if (width <= 0 || width > 64 || bit_offset < 0 || bit_offset + width > bits_)
      throw std::out_of_range("BitRow::extract64: bad range");
    int w = bit_offset >> 6, off = bit_offset & 63;
    uint64_t v = words_[w] >> off;
    if (off && w + 1 < static_cast<int>(words_.size()) && off + width > 64)
      v |= words_[w + 1] << (64 - off);
    if (width < 64) v &= (uint64_t{1} << width) - 1;
    return v;
  }

  /// Writes the low `width` bits of `v` (<= 64) starting at `bit_offset`.
  void deposit64(int bit_offset, int width, uint64_t v) {
    if (width <= 0 || width > 64 || bit_offset < 0 || bit_offset + width > bits_)
      throw std::out_of_range("BitRow::deposit64: bad range");
    if (width < 64) v &= (uint64_t{1} << width) - 1;
    int w = bit_offset >> 6, off = bit_offset & 63;
    uint64_t lo_mask = (width < 64 ? (uint64_t{1} << width) - 1 : ~uint64_t{0}) << off;
    words_[w] = (words_[w] & ~lo_mask) | (v << off);
    if (off && off + width > 64) {
      int hi_bits = off + width - 64;
      uint64_t hi_mask = (uint64_t{1} << hi_bits) - 1;
      words_[w + 1] = (words_[w + 1] & ~hi_mask) | (v >> (64 - off));
    }
  }

  /// Hex dump, byte order (two lowercase digits per byte). Requires a
  /// byte-aligned width.
  std::string to_hex() const {
    if (bits_ % 8 != 0) throw std::logic_error("BitRow::to_hex: width not byte aligned");
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bits_ / 4);
    for (int j = 0; j < bits_ / 8; ++j) {
      uint8_t b = static_cast<uint8_t>(words_[j >> 3] >> (8 * (j & 7)));
      out.push_back(digits[b >> 4]);
      out.push_back(digits[b & 0xF]);
    }
    return out;
  }

  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& words() { return words_; }

  /// Clears any bits above size(); word-wise operations must call this
  /// after writing the last partial word.
  void mask_tail() {
    int rem = bits_ & 63;
    if (rem) words_.back() &= (uint64_t{1} << rem) - 1;
  }

  bool operator==(const BitRow&) const = default;

 private:
  void check(int i) const {
    if (i < 0 || i >= bits_) throw std::out_of_range("BitRow: bit index out of range");
  }

  int bits_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace sha3pim
