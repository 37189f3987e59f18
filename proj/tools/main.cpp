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

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "sha3pim/compiler.hpp"
#include "sha3pim/kat.hpp"
#include "sha3pim/keccak.hpp"
#include "sha3pim/perf.hpp"

namespace {

using namespace sha3pim;

// Exit codes: 0 ok, 2 digest/KAT mismatch, 3 configuration or capacity
// error, 4 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;

struct MessageOpts {
  std::string hex;
  std::string file;
  bool hex_set = false;
};

struct GeometryOpts {
  int rows = 256;
  int cols = 256;
};

struct CostOpts {
  int logic = 4;
  int shift = 2;
  int load = 0;

  CycleCostModel model() const { return {logic, shift, load}; }
};

void add_message_opts(CLI::App* cmd, MessageOpts& m) {
  auto* hex = cmd->add_option("--msg", m.hex, "Message as a hex string (may be empty)");
  hex->expected(0, 1);  // --msg alone means the empty message
  auto* file = cmd->add_option("--msg-file", m.file, "Message file (raw bytes)");
  hex->excludes(file);
  cmd->callback([hex, &m] { m.hex_set = hex->count() > 0; });
}

void add_geometry_opts(CLI::App* cmd, GeometryOpts& g) {
  cmd->add_option("--rows", g.rows, "Subarray rows (default 256)");
  cmd->add_option("--cols", g.cols, "Subarray columns (default 256)");
}

void add_cost_opts(CLI::App* cmd, CostOpts& c) {
  cmd->add_option("--load-cycles", c.load, "Cycles charged per RC LOAD (default 0, overlapped)");
  cmd->add_option("--logic-cycles", c.logic, "Cycles per logic op incl. write-back (default 4)");
  cmd->add_option("--shift-cycles", c.shift, "Cycles per segmented rotate (default 2)");
}

std::vector<uint8_t> read_message(const MessageOpts& m) {
  if (m.hex_set && !m.file.empty())
    throw CLI::ValidationError("--msg and --msg-file are mutually exclusive");
  if (!m.hex_set && m.file.empty())
    throw CLI::ValidationError("one of --msg or --msg-file is required");
  if (m.hex_set) return parse_hex(m.hex);
  std::ifstream f(m.file, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open message file: " + m.file);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const void* data, size_t size) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open output file: " + path);
  f.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!f) throw std::ios_base::failure("write failed: " + path);
}

TechProfile resolve_profile(const std::string& name) {
  if (const TechProfile* p = find_builtin(name)) return *p;
  auto try_file = [&](const std::string& path) -> std::optional<TechProfile> {
    std::ifstream probe(path);
    if (!probe) return std::nullopt;
    for (const auto& p : load_profiles_file(path))
      if (p.name == name || path == name) return p;
    throw std::invalid_argument("no profile named '" + name + "' in " + path);
  };
  if (auto p = try_file(name)) return *p;
  if (const char* dir = std::getenv("SHA3PIM_PROFILE_DIR"))
    if (auto p = try_file(std::string(dir) + "/" + name + ".json")) return *p;
  throw std::invalid_argument("unknown profile '" + name +
                              "' (not built in, not a file, not in $SHA3PIM_PROFILE_DIR)");
}

void print_cycles(const CycleReport& r) {
  std::printf("cycles: theta=%llu rho=%llu pi=%llu chi=%llu iota=%llu absorb=%llu total=%llu\n",
              (unsigned long long)r.cycles(Stage::Theta), (unsigned long long)r.cycles(Stage::Rho),
              (unsigned long long)r.cycles(Stage::Pi), (unsigned long long)r.cycles(Stage::Chi),
              (unsigned long long)r.cycles(Stage::Iota),
              (unsigned long long)r.cycles(Stage::Absorb), (unsigned long long)r.total);
}

int cmd_hash(const MessageOpts& msg_opts, const GeometryOpts& geom, const CostOpts& cost,
             const std::string& trace_path) {
  std::vector<uint8_t> msg = read_message(msg_opts);
  std::string trace;
  SimResult res = simulate_hash(msg, geom.rows, geom.cols, cost.model(), nullptr,
                                trace_path.empty() ? nullptr : &trace);
  if (!trace_path.empty()) write_file(trace_path, trace.data(), trace.size());

  Digest ref = sha3_256(msg);
  bool match = std::equal(ref.begin(), ref.end(), res.digest.begin(), res.digest.end()) &&
               res.tiles_agree;
  std::printf("digest: %s\n", to_hex(res.digest).c_str());
  std::printf("rows used: %llu (blocks: %llu)\n", (unsigned long long)res.state_message_rows,
              (unsigned long long)res.blocks);
  std::printf("commands: %zu\n", res.commands);
  print_cycles(res.cycles);
  std::printf("oracle match: %s\n", match ? "true" : "false");
  return match ? kExitOk : kExitMismatch;
}

int cmd_verify(const std::string& kat_path, int cols, const CostOpts& cost) {
  std::vector<KatVector> vectors = parse_kat_file(kat_path);
  size_t passed = 0, skipped = 0;
  std::vector<uint64_t> failures;
  for (const KatVector& v : vectors) {
    if (!v.byte_aligned()) {
      ++skipped;
      continue;
    }
    uint64_t need = capacity(v.len_bits).rows_needed + TileLayout::kIntermediateRows;
    int rows = static_cast<int>(std::max<uint64_t>(need, 32));
    SimResult res = simulate_hash(v.msg, rows, cols, cost.model());
    bool ok = res.tiles_agree && v.md.size() == res.digest.size() &&
              std::equal(res.digest.begin(), res.digest.end(), v.md.begin());
    // the simulated path must also agree with the software reference
    Digest ref = sha3_256(v.msg);
    ok = ok && std::equal(ref.begin(), ref.end(), res.digest.begin(), res.digest.end());
    if (ok)
      ++passed;
    else
      failures.push_back(v.len_bits);
  }
  std::printf("verified %zu vectors: %zu passed, %zu failed, %zu skipped (non-byte lengths)\n",
              vectors.size(), passed, failures.size(), skipped);
  for (uint64_t len : failures) std::printf("FAIL: Len = %llu\n", (unsigned long long)len);
  return failures.empty() ? kExitOk : kExitMismatch;
}

int cmd_report(std::vector<std::string> names, const std::string& csv_path,
               const std::string& json_path) {
  std::vector<TechProfile> profiles;
  if (names.empty())
    profiles = builtin_profiles();
  else
    for (const auto& n : names) profiles.push_back(resolve_profile(n));
  std::vector<ReportRow> rows = build_report(profiles);

  std::printf("%-22s %9s %9s %9s %12s %12s %10s %9s  %s\n", "design", "f (MHz)", "KGE", "nJ",
              "latency(ns)", "tput(Mbps)", "Mbps/KGE", "TAE", "vs published");
  for (const auto& r : rows)
    std::printf("%-22s %9.0f %9.1f %9.3f %12.1f %12.0f %10.1f %9.1f  %s\n", r.profile.c_str(),
                r.frequency_hz / 1e6, r.area_kge, r.energy_nj, r.latency_ns, r.tput_mbps,
                r.tput_per_area, r.tae, r.flagged ? "DEVIATES >1%" : "within 1%");
  std::printf("---- published comparison rows ----\n");
  std::printf("%-22s %6s %9s %9s %8s %9s %9s %10s %8s %10s\n", "design", "tech", "f (MHz)", "KGE",
              "cycles", "ns", "Mbps", "Mbps/KGE", "nJ", "TAE");
  for (const auto& b : baseline_rows())
    std::printf("%-22s %6s %9s %9s %8s %9s %9s %10s %8s %10s\n", b.name.c_str(), b.tech.c_str(),
                b.freq_mhz.c_str(), b.area_kge.c_str(), b.latency_cycles.c_str(),
                b.latency_ns.c_str(), b.tput_mbps.c_str(), b.tput_per_area.c_str(),
                b.energy_nj.c_str(), b.tae.c_str());

  if (!csv_path.empty()) {
    std::string csv = report_csv(rows);
    write_file(csv_path, csv.data(), csv.size());
  }
  if (!json_path.empty()) {
    std::string js = report_json(rows);
    write_file(json_path, js.data(), js.size());
  }
  for (const auto& r : rows)
    if (r.flagged) return kExitMismatch;
  return kExitOk;
}

int cmd_scale(const std::string& profile_name, const std::vector<uint64_t>& ns,
              std::optional<double> cap, const std::string& out_path) {
  TechProfile p = resolve_profile(profile_name);
  std::vector<uint64_t> points = ns;
  if (points.empty())
    for (uint64_t n = 4; n <= 4'000'000; n *= 4) points.push_back(n);
  std::string csv = scale_csv(scale_sweep(p, points, cap));
  if (out_path.empty())
    std::fputs(csv.c_str(), stdout);
  else
    write_file(out_path, csv.data(), csv.size());
  return kExitOk;
}

int cmd_trace(const MessageOpts& msg_opts, const GeometryOpts& geom, const CostOpts& cost,
              const std::string& out_prefix, int rounds) {
  TileLayout ly = TileLayout::build(geom.rows, geom.cols, 64);
  CommandStream stream;
  if (rounds > 0) {
    // bare permutation rounds, no message
    for (int r = 0; r < rounds; ++r)
      stream.append(compile_round(ly, r % num_rounds(64), cost.model()).stream);
  } else {
    HashProgram prog = compile_hash(ly, read_message(msg_opts), cost.model());
    stream = prog.stream;
  }
  std::vector<uint8_t> bin = serialize_stream(stream, 8);
  std::string trace = format_trace(stream, cost.model());
  std::string layout_json = ly.to_json();
  write_file(out_prefix + ".bin", bin.data(), bin.size());
  write_file(out_prefix + ".txt", trace.data(), trace.size());
  write_file(out_prefix + ".layout.json", layout_json.data(), layout_json.size());
  std::printf("commands: %zu\n", stream.size());
  std::printf("stream: %s.bin (%zu bytes, k=8)\n", out_prefix.c_str(), bin.size());
  std::printf("trace: %s.txt\n", out_prefix.c_str());
  std::printf("layout: %s.layout.json\n", out_prefix.c_str());
  print_cycles(tally(stream, cost.model()));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bit-exact simulator of an in-SRAM bitline-computing SHA3-256 engine"};
  app.require_subcommand(1);

  MessageOpts hash_msg, trace_msg;
  GeometryOpts hash_geom, trace_geom;
  CostOpts hash_cost, trace_cost, verify_cost;
  std::string hash_trace_path;

  CLI::App* hash = app.add_subcommand("hash", "Hash one message through the simulated engine");
  add_message_opts(hash, hash_msg);
  add_geometry_opts(hash, hash_geom);
  add_cost_opts(hash, hash_cost);
  hash->add_option("--trace", hash_trace_path, "Also write the text trace to this file");

  std::string kat_path;
  int verify_cols = 256;
  CLI::App* verify = app.add_subcommand("verify", "Run a NIST-style KAT file through the simulator");
  verify->add_option("--kat", kat_path, "KAT file (Len/Msg/MD lines)")->required();
  verify->add_option("--cols", verify_cols, "Subarray columns (rows are sized per vector)");
  add_cost_opts(verify, verify_cost);

  std::vector<std::string> report_names;
  std::string report_csv_path, report_json_path;
  CLI::App* report = app.add_subcommand("report", "Latency/throughput/area/energy metrics table");
  report->add_option("--profile", report_names, "Profile names (default: all built in)");
  report->add_option("--csv", report_csv_path, "Write rows as CSV");
  report->add_option("--json", report_json_path, "Write rows as JSON");

  std::string scale_profile = "opt-sram", scale_out;
  std::vector<uint64_t> scale_ns;
  std::optional<double> cap_watts;
  double cap_value = 0;
  CLI::App* scalec = app.add_subcommand("scale", "Throughput scaling sweep CSV");
  scalec->add_option("--profile", scale_profile, "Profile (default opt-sram)");
  scalec->add_option("--n", scale_ns, "Parallel Keccak counts (repeatable/comma separated)")
      ->delimiter(',');
  CLI::Option* cap_opt = scalec->add_option("--cap-watts", cap_value, "Power cap in watts");
  scalec->add_option("--out", scale_out, "Output CSV path (default stdout)");

  std::string trace_prefix;
  int trace_rounds = 0;
  CLI::App* trace = app.add_subcommand("trace", "Emit the compiled command stream and text trace");
  add_message_opts(trace, trace_msg);
  add_geometry_opts(trace, trace_geom);
  add_cost_opts(trace, trace_cost);
  trace->add_option("--rounds", trace_rounds,
                    "Trace N bare permutation rounds instead of a message hash");
  trace->add_option("--out", trace_prefix, "Output prefix (.bin/.txt/.layout.json)")->required();

  try {
    app.parse(argc, argv);
    if (cap_opt->count() > 0) cap_watts = cap_value;
    if (hash->parsed()) return cmd_hash(hash_msg, hash_geom, hash_cost, hash_trace_path);
    if (verify->parsed()) return cmd_verify(kat_path, verify_cols, verify_cost);
    if (report->parsed()) return cmd_report(report_names, report_csv_path, report_json_path);
    if (scalec->parsed()) return cmd_scale(scale_profile, scale_ns, cap_watts, scale_out);
    if (trace->parsed()) return cmd_trace(trace_msg, trace_geom, trace_cost, trace_prefix, trace_rounds);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
