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
#include <string>
#include <vector>

#include "qleak/eval.hpp"
#include "qleak/trace.hpp"

// File-level commands shared by the C API and the command-line tool.
namespace qleak::workflow {

struct GenerateOptions {
    std::uint32_t count = 10;
    std::uint32_t qubits_lo = 2, qubits_hi = 10;
    std::uint32_t gates_lo = 10, gates_hi = 100;
    std::uint64_t seed = 0;
    std::string out_dir;
};

/// Writes `count` random circuits as `rand_<i>_q<n>_g<g>.qasm`; returns the paths.
std::vector<std::string> generate_circuits(const GenerateOptions &opt);

struct CollectOptions {
    std::string circuits_dir;
    std::string out_dir;
    CollectionConfig config;
    std::uint32_t runs_per_circuit = 1;
    std::uint64_t seed = 0;
};

/// Collects every circuit in the directory. Runs are interleaved
/// (run 0 of every circuit, then run 1, ...) so references and probes of
/// one circuit are not recorded back to back. Returns the trace paths.
std::vector<std::string> collect_directory(const CollectOptions &opt);

/// Seed and run_id used for run `run_index` of `circuit_name`.
std::uint64_t run_seed(std::uint64_t seed, const std::string &circuit_name, std::uint32_t run_index);
std::string run_id_for(std::uint64_t run_seed, std::uint32_t run_index);

/// Summarizes every trace in the directory, rows sorted by (circuit, run_id).
std::vector<TimingProfile> summarize_directory(const std::string &trace_dir);

/// summarize_directory + write; returns the row count.
std::size_t write_features(const std::string &trace_dir, const std::string &out_csv);

/// Summary rows plus the traces in `trace_dir` whose run_id appears in them.
ProfileDatabase load_database(const std::string &db_csv, const std::string &trace_dir);

std::string identify_to_json(const std::string &db_csv, const std::string &refs_dir, const std::string &probe_file,
                             const EvalConfig &cfg);

struct EvaluateOutput {
    std::string metrics_json;
    std::string strata_csv;
};

/// Every trace with a summary row is a probe, identified leave-own-run-out.
EvaluateOutput evaluate_to_json(const std::string &db_csv, const std::string &trace_dir, const EvalConfig &cfg);

}  // namespace qleak::workflow
