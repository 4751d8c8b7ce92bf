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

#include <gtest/gtest.h>

#include <filesystem>

#include "qleak/errors.hpp"
#include "qleak/io.hpp"
#include "qleak/workflow.hpp"

namespace qleak {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string &name) {
    const fs::path p = fs::temp_directory_path() / ("qleak_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

ShotTrace sample_trace() {
    CollectionConfig cfg;
    cfg.shots = 12;
    cfg.warmup_shots = 2;
    return collect(load_qasm_file(QLEAK_CORPUS_DIR "/bv_n10.qasm"), cfg, 5, "r00-abc");
}

TEST(Io, TraceRoundTrip) {
    const ShotTrace t = sample_trace();
    const ShotTrace back = io::trace_from_json(io::trace_to_json(t));
    EXPECT_EQ(back.circuit_name, t.circuit_name);
    EXPECT_EQ(back.run_id, t.run_id);
    EXPECT_EQ(back.n_qubits, t.n_qubits);
    EXPECT_EQ(back.total_gates, t.total_gates);
    EXPECT_EQ(back.source_hash, t.source_hash);
    EXPECT_EQ(back.seed, t.seed);
    EXPECT_EQ(back.shots_ns, t.shots_ns);
    EXPECT_EQ(back.kept_ns, t.kept_ns);
    EXPECT_EQ(back.mem_deltas_bytes, t.mem_deltas_bytes);
    EXPECT_EQ(back.outcomes, t.outcomes);
    EXPECT_EQ(back.collected_at, t.collected_at);
    EXPECT_EQ(back.config.shots, 12u);
    EXPECT_EQ(back.config.warmup_shots, 2u);
    EXPECT_EQ(io::trace_to_json(back), io::trace_to_json(t));
    EXPECT_EQ(io::trace_filename(t), "bv_n10.r00-abc.trace.json");
}

TEST(Io, TraceRejectsInconsistentKept) {
    ShotTrace t = sample_trace();
    t.kept_ns.push_back(123456789);
    EXPECT_THROW(io::trace_from_json(io::trace_to_json(t)), Error);
    EXPECT_THROW(io::trace_from_json("{not json"), Error);
    EXPECT_THROW(io::trace_from_json("{}"), Error);
}

TEST(Io, SummaryHeaderExact) {
    const std::string csv = io::profiles_to_csv({});
    EXPECT_EQ(csv.substr(0, csv.find('\n')), io::kSummaryHeader);
    EXPECT_EQ(io::kSummaryHeader,
              "circuit_name,run_id,n_qubits,total_gates,avg_shot_time_ns,median_shot_time_ns,min_shot_time_ns,"
              "max_shot_time_ns,std_shot_time_ns,timing_variance,avg_memory_delta_bytes,max_memory_delta_bytes");
}

TEST(Io, CsvRoundTripIsExact) {
    const TimingProfile p = summarize(sample_trace());
    TimingProfile q = p;
    q.run_id = "r01";
    q.avg_shot_time_ns = 1.0 / 3.0;
    q.timing_variance = 1e300;
    const auto back = io::profiles_from_csv(io::profiles_to_csv({p, q}));
    ASSERT_EQ(back.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        const TimingProfile &src = i ? q : p;
        EXPECT_EQ(back[i].circuit_name, src.circuit_name);
        EXPECT_EQ(back[i].run_id, src.run_id);
        EXPECT_EQ(back[i].labels, src.labels);
        EXPECT_EQ(back[i].features(), src.features());
    }
    EXPECT_EQ(io::profiles_to_csv(back), io::profiles_to_csv({p, q}));
}

TEST(Io, CsvRejectsBadInput) {
    EXPECT_THROW(io::profiles_from_csv("wrong,header\n"), Error);
    TimingProfile p;
    p.circuit_name = "bad,name";
    EXPECT_THROW(io::profiles_to_csv({p}), Error);
    const std::string short_row = std::string(io::kSummaryHeader) + "\na,b,1,2,3\n";
    EXPECT_THROW(io::profiles_from_csv(short_row), Error);
}

TEST(Io, DirectoryWorkflowEndToEnd) {
    const fs::path root = scratch_dir("workflow");
    workflow::GenerateOptions gen;
    gen.count = 6;
    gen.qubits_lo = 2;
    gen.qubits_hi = 5;
    gen.gates_lo = 5;
    gen.gates_hi = 30;
    gen.seed = 11;
    gen.out_dir = (root / "circuits").string();
    EXPECT_EQ(workflow::generate_circuits(gen).size(), 6u);
    EXPECT_EQ(io::list_qasm_files(gen.out_dir).size(), 6u);

    workflow::CollectOptions col;
    col.circuits_dir = gen.out_dir;
    col.out_dir = (root / "traces").string();
    col.config.shots = 20;
    col.runs_per_circuit = 2;
    col.seed = 3;
    EXPECT_EQ(workflow::collect_directory(col).size(), 12u);

    const std::string csv = (root / "summary.csv").string();
    EXPECT_EQ(workflow::write_features(col.out_dir, csv), 12u);
    const auto rows = io::read_profiles_csv(csv);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LT(std::tie(rows[i - 1].circuit_name, rows[i - 1].run_id), std::tie(rows[i].circuit_name, rows[i].run_id));
    }
    const ProfileDatabase db = workflow::load_database(csv, col.out_dir);
    EXPECT_EQ(db.traces.size(), 12u);

    EvalConfig cfg;
    cfg.k = 3;
    const auto out = workflow::evaluate_to_json(csv, col.out_dir, cfg);
    EXPECT_NE(out.metrics_json.find("\"top1_accuracy\""), std::string::npos);
    EXPECT_EQ(out.strata_csv.substr(0, out.strata_csv.find(',')), "stratum");

    const std::string probe = io::list_trace_files(col.out_dir).front();
    const std::string report = workflow::identify_to_json(csv, col.out_dir, probe, cfg);
    EXPECT_NE(report.find("\"failure_mode\""), std::string::npos);
    fs::remove_all(root);
}

TEST(Io, RunSeedsDifferPerCircuitAndRun) {
    EXPECT_NE(workflow::run_seed(1, "a", 0), workflow::run_seed(1, "b", 0));
    EXPECT_NE(workflow::run_seed(1, "a", 0), workflow::run_seed(1, "a", 1));
    EXPECT_EQ(workflow::run_seed(1, "a", 0), workflow::run_seed(1, "a", 0));
    EXPECT_EQ(workflow::run_id_for(0x1234567800000000ull, 3), "r03-12345678");
}

TEST(Io, MissingFileIsIoError) {
    EXPECT_THROW(io::read_file("/nonexistent/qleak/file"), IoError);
    EXPECT_THROW(load_qasm_file("/nonexistent/x.qasm"), IoError);
}

}  // namespace
}  // namespace qleak
