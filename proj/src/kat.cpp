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

#include "sha3pim/kat.hpp"

#include <fstream>
#include <optional>
#include <stdexcept>

#include "sha3pim/keccak.hpp"

namespace sha3pim {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Splits "Key = value"; returns nullopt for lines without '='.
std::optional<std::pair<std::string, std::string>> key_value(const std::string& line) {
  size_t eq = line.find('=');
  if (eq == std::string::npos) return std::nullopt;
  return std::pair{trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
}

}  // namespace

std::vector<KatVector> parse_kat(std::istream& in) {
  std::vector<KatVector> out;
  long long len = -1;
  std::optional<std::vector<uint8_t>> msg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == '[') continue;
    auto kv = key_value(t);
    if (!kv) throw std::runtime_error("KAT parse: malformed line " + std::to_string(lineno));
    const auto& [key, value] = *kv;
    try {
      if (key == "Len") {
        len = static_cast<long long>(std::stoull(value));
      } else if (key == "Msg") {
        msg = parse_hex(value);
      } else if (key == "MD") {
        if (len < 0 || !msg)
          throw std::runtime_error("MD before Len/Msg");
        uint64_t bits = static_cast<uint64_t>(len);
        KatVector v;
        v.len_bits = bits;
        // NIST writes "Msg = 00" for the empty message.
        v.msg = (bits == 0) ? std::vector<uint8_t>{} : std::move(*msg);
        if (v.byte_aligned() && v.msg.size() != (v.len_bits + 7) / 8)
          throw std::runtime_error("Msg length disagrees with Len");
        v.md = parse_hex(value);
        out.push_back(std::move(v));
        len = -1;
        msg.reset();
      }
      // Unknown keys (Count, Seed, ...) are ignored.
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("KAT parse: line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<KatVector> parse_kat_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open KAT file: " + path);
  return parse_kat(f);
}

}  // namespace sha3pim
