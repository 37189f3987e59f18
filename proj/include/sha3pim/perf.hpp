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
#include <optional>
#include <string>
#include <vector>

namespace sha3pim {

// Analytical latency/throughput/area/energy model. Technology constants
// (frequency, KGE, nJ) come from circuit-level tools and are consumed here
// as configuration; the model turns them into the derived metrics and
// power-capped scaling curves.

struct TechProfile {
  std::string name;
  std::string tech_node;
  double frequency_hz = 0;
  double area_kge = 0;
  double energy_nj = 0;        // per round by default; see energy_scope
  int cycles_per_round = 564;
  int parallelism = 4;         // states computed per engine (tiles in lockstep)
  std::string energy_scope = "round";  // "round" or "hash" (24 rounds)

  double energy_per_round_nj() const;
  void validate() const;  // throws std::invalid_argument
};

inline constexpr int kBitsPerRound = 1088;  // rate bits folded in per block

double round_latency_ns(const TechProfile& p);
double throughput_mbps(const TechProfile& p);
double tput_per_area(const TechProfile& p);   // Mbps / KGE
double tae(const TechProfile& p);             // Mbps / (KGE * nJ)
double engine_power_w(const TechProfile& p);  // energy per round / round latency

struct ScalePoint {
  uint64_t n = 0;                 // parallel Keccak states requested
  double tput_uncapped_mbps = 0;  // linear in n
  double tput_capped_mbps = 0;    // equals uncapped below the knee
  uint64_t engines_needed = 0;
  uint64_t engines_used = 0;
  bool saturated = false;
};

/// Engines needed = ceil(n / parallelism); a power cap limits them to
/// floor(cap / engine power). Throws when the cap cannot power one engine.
ScalePoint scale(const TechProfile& p, uint64_t n_keccaks,
                 std::optional<double> power_cap_w = std::nullopt);

std::vector<ScalePoint> scale_sweep(const TechProfile& p, const std::vector<uint64_t>& ns,
                                    std::optional<double> power_cap_w);

/// CSV with header: n,tput_uncapped_mbps,tput_capped_mbps.
std::string scale_csv(const std::vector<ScalePoint>& points);

// Bundled design points (28nm): the latency-optimized 32x256 engine and the
// cache-repurposing 256x256 variant, each on SRAM and ReRAM.
const std::vector<TechProfile>& builtin_profiles();
const TechProfile* find_builtin(const std::string& name);

/// Parses {"profiles":[{...}]} or a single profile object. Unknown keys are
/// rejected. Schema per profile: name, tech_node?, frequency_hz, area_kge,
/// energy_nj, cycles_per_round?, parallelism?, energy_scope?.
std::vector<TechProfile> load_profiles_json(const std::string& text);
std::vector<TechProfile> load_profiles_file(const std::string& path);

/// Static comparison rows (published numbers for other designs), kept as
/// display strings since several entries are bounds or unavailable.
struct BaselineRow {
  std::string name, tech, freq_mhz, area_kge, latency_cycles, latency_ns, tput_mbps,
      tput_per_area, energy_nj, tae;
};

const std::vector<BaselineRow>& baseline_rows();

/// Published targets for the four bundled profiles, with the tolerance each
/// value is reproduced to.
struct MetricTarget {
  std::string profile;
  double latency_ns = 0, tput_mbps = 0, tput_per_area = 0, tae = 0;
  double tol_latency = 0.01, tol_tput = 0.01, tol_tpa = 0.01, tol_tae = 0.01;
};

const std::vector<MetricTarget>& metric_targets();

struct ReportRow {
  std::string profile;
  double latency_ns = 0, tput_mbps = 0, tput_per_area = 0, tae = 0, energy_nj = 0,
         area_kge = 0, frequency_hz = 0;
  double max_deviation = 0;  // worst relative deviation from the published row
  bool flagged = false;      // any metric off by more than 1%
};

std::vector<ReportRow> build_report(const std::vector<TechProfile>& profiles);
std::string report_csv(const std::vector<ReportRow>& rows);
std::string report_json(const std::vector<ReportRow>& rows);

}  // namespace sha3pim
