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

#include <string>
#include <string_view>
#include <vector>

#include "qleak/eval.hpp"
#include "qleak/features.hpp"
#include "qleak/trace.hpp"

namespace qleak::io {

/// Trace file name: `<circuit_name>.<run_id>.trace.json`.
std::string trace_filename(const ShotTrace &t);

std::string trace_to_json(const ShotTrace &t);
ShotTrace trace_from_json(std::string_view text);

void write_trace(const std::string &path, const ShotTrace &t);
ShotTrace read_trace(const std::string &path);

/// All `*.trace.json` files in `dir`, sorted by file name.
std::vector<std::string> list_trace_files(const std::string &dir);
std::vector<ShotTrace> read_trace_dir(const std::string &dir);

/// All `*.qasm` files in `dir`, sorted by file name.
std::vector<std::string> list_qasm_files(const std::string &dir);

inline constexpr std::string_view kSummaryHeader =
    "circuit_name,run_id,n_qubits,total_gates,avg_shot_time_ns,median_shot_time_ns,min_shot_time_ns,"
    "max_shot_time_ns,std_shot_time_ns,timing_variance,avg_memory_delta_bytes,max_memory_delta_bytes";

/// Summary CSV, reals at 17 significant digits, rows in the given order.
std::string profiles_to_csv(const std::vector<TimingProfile> &profiles);
std::vector<TimingProfile> profiles_from_csv(std::string_view text);

void write_profiles_csv(const std::string &path, const std::vector<TimingProfile> &profiles);
std::vector<TimingProfile> read_profiles_csv(const std::string &path);

std::string report_to_json(const IdentificationReport &r, const EvalConfig &cfg);
std::string evaluation_to_json(const EvaluationResult &r, const EvalConfig &cfg);

/// One row per stratum plus "overall": the table behind the accuracy-by-scale chart.
std::string strata_table_csv(const MetricsSummary &s);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view contents);

}  // namespace qleak::io
