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
#include <istream>
#include <string>
#include <vector>

namespace sha3pim {

// Reader for NIST-style .rsp known-answer files:
//   Len = <bits>
//   Msg = <hex>
//   MD = <hex>
// Comment lines (#) and section markers ([...]) are ignored.

struct KatVector {
  uint64_t len_bits = 0;
  std::vector<uint8_t> msg;
  std::vector<uint8_t> md;

  // The hash API is byte-oriented; vectors with fractional byte lengths
  // are reported as skipped by the verifier rather than hashed.
  bool byte_aligned() const { return len_bits % 8 == 0; }
};

std::vector<KatVector> parse_kat(std::istream& in);
std::vector<KatVector> parse_kat_file(const std::string& path);  // throws std::runtime_error on I/O

}  // namespace sha3pim
