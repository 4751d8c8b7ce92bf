// Copyright 2026 The qleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qleak/qasm.hpp"
#include "qleak/sim.hpp"

namespace qleak {

enum class OutlierRule { Iqr1_5, None };
enum class MemMode { OsProbe, DeterministicSynthetic };

std::string_view outlier_rule_name(OutlierRule rule);
OutlierRule parse_outlier_rule(std::string_view text);
std::string_view mem_mode_name(MemMode mode);
MemMode parse_mem_mode(std::string_view text);

struct CollectionConfig {
    std::uint32_t shots = 100;
    std::uint32_t warmup_shots = 5;
    OutlierRule outlier_rule = OutlierRule::Iqr1_5;
    MemMode mem_mode = MemMode::DeterministicSynthetic;
    SimConfig sim;
};

/// Raw per-shot record of one collection run.
///
/// `shots_ns` holds every measured shot after warm-up; `kept_ns` is the
/// subsequence that survived outlier removal. Labels (n_qubits, total_gates)
/// travel with the trace so summaries can be built from trace files alone.
struct ShotTrace {
    std::string circuit_name;
    std::string run_id;
    std::uint32_t n_qubits = 0;
    std::uint64_t total_gates = 0;
    std::string source_hash;
    CollectionConfig config;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> shots_ns;
    std::vector<std::uint64_t> kept_ns;
    std::vector<std::uint64_t> mem_deltas_bytes;
    std::vector<std::string> outcomes;
    std::string collected_at;
};

/// Runs warmup_shots + shots shots back to back on the calling thread.
///
/// Timing quality assumes nothing else is busy on the host; do not run two
/// collections concurrently. An empty `run_id` is derived from the seed.
/// When the OS memory probe is unavailable the synthetic mode is used and
/// recorded in the trace's config echo.
ShotTrace collect(const Circuit &c, const CollectionConfig &cfg, std::uint64_t seed, std::string run_id = {});

/// Signature of run_shot; lets callers substitute an instrumented or modeled runner.
using ShotRunner = std::function<ShotResult(const Circuit &, std::uint64_t, const SimConfig &)>;

ShotTrace collect(const Circuit &c, const CollectionConfig &cfg, std::uint64_t seed, std::string run_id,
                  const ShotRunner &runner);

/// Linear-interpolation quantile over sorted data (position (n - 1) * p).
double quantile_sorted(std::span<const double> sorted, double p);

/// Tukey fences at Q1 - 1.5 IQR and Q3 + 1.5 IQR, order preserved.
std::vector<std::uint64_t> remove_outliers_iqr(std::span<const std::uint64_t> samples);

std::vector<std::uint64_t> apply_outlier_rule(std::span<const std::uint64_t> samples, OutlierRule rule);

/// state_size_bytes(n) plus seeded noise uniform in [0, 4096).
std::uint64_t synthetic_mem_delta(std::uint32_t n_qubits, std::uint64_t noise_seed);

/// Process peak resident set size in bytes. Throws ProbeUnavailable.
std::uint64_t peak_rss_bytes();

/// Runs `shot` and reports its memory delta. In OsProbe mode this is the
/// growth of peak RSS across the shot (0 when memory is reused).
std::uint64_t measure_mem_delta(std::uint32_t n_qubits, MemMode mode, std::uint64_t noise_seed,
                                const std::function<void()> &shot);

std::string rfc3339_now();

}  // namespace qleak
