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

// qleak command-line tool. Every command goes through the C API in libqleak.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "qleak/qleak.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Range {
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
};

Range parse_range(const std::string &text, const char *flag) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const auto v = static_cast<std::uint32_t>(std::stoul(text));
            return {v, v};
        }
        Range r{static_cast<std::uint32_t>(std::stoul(text.substr(0, colon))),
                static_cast<std::uint32_t>(std::stoul(text.substr(colon + 1)))};
        if (r.lo > r.hi) throw std::invalid_argument(text);
        return r;
    } catch (const std::logic_error &) {
        throw UsageError(std::string(flag) + " expects LO:HI, got '" + text + "'");
    }
}

// QLEAK_SEED overrides --seed everywhere.
std::uint64_t effective_seed(std::uint64_t flag_seed) {
    const char *env = std::getenv("QLEAK_SEED");
    if (env == nullptr || *env == '\0') return flag_seed;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used, 0);
        if (env[used] != '\0') throw std::invalid_argument(env);
        return v;
    } catch (const std::logic_error &) {
        throw UsageError(std::string("QLEAK_SEED is not an unsigned integer: '") + env + "'");
    }
}

void check(qleak_status st) {
    if (st != QLEAK_OK) {
        throw std::runtime_error(std::string(qleak_status_name(st)) + ": " + qleak_last_error());
    }
}

qleak_normalization parse_normalization(const std::string &text) {
    if (text == "stored") return QLEAK_NORM_STORED_PARAMETERS;
    if (text == "refit") return QLEAK_NORM_REFIT_WITH_PROBE;
    throw UsageError("--normalization expects stored or refit");
}

void write_output(const std::string &path, const char *contents) {
    if (path == "-") {
        std::fputs(contents, stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("IoError: cannot write " + path);
    out << contents;
}

class OwnedString {
public:
    ~OwnedString() { qleak_string_free(ptr_); }
    char **out() { return &ptr_; }
    const char *get() const { return ptr_ != nullptr ? ptr_ : ""; }

private:
    char *ptr_ = nullptr;
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qleak: timing side-channel toolkit for state-vector quantum simulators"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qleak_version());

    // gen-circuits
    auto *gen = app.add_subcommand("gen-circuits", "Write seeded random QASM circuits");
    std::uint32_t gen_count = 10;
    std::string gen_qubits = "2:10", gen_gates = "10:100", gen_out;
    std::uint64_t gen_seed = 0;
    gen->add_option("--count", gen_count, "Number of circuits")->capture_default_str();
    gen->add_option("--qubits", gen_qubits, "Qubit range LO:HI")->capture_default_str();
    gen->add_option("--gates", gen_gates, "Gate-count range LO:HI")->capture_default_str();
    gen->add_option("--seed", gen_seed, "RNG seed (QLEAK_SEED overrides)")->capture_default_str();
    gen->add_option("--out", gen_out, "Output directory")->required();

    // collect
    auto *col = app.add_subcommand("collect", "Run circuits and record per-shot traces");
    std::string col_circuits, col_out, col_outliers = "iqr_1_5", col_mem = "synthetic";
    std::uint32_t col_shots = 100, col_warmup = 5, col_runs = 1, col_max_qubits = 24;
    std::uint64_t col_seed = 0;
    col->add_option("--circuits", col_circuits, "Directory of .qasm files")->required();
    col->add_option("--shots", col_shots, "Measured shots per run")->capture_default_str();
    col->add_option("--warmup", col_warmup, "Warm-up shots discarded per run")->capture_default_str();
    col->add_option("--outliers", col_outliers, "Outlier rule")
        ->check(CLI::IsMember({"iqr_1_5", "none"}))
        ->capture_default_str();
    col->add_option("--mem", col_mem, "Memory-delta mode")
        ->check(CLI::IsMember({"synthetic", "os_probe"}))
        ->capture_default_str();
    col->add_option("--runs-per-circuit", col_runs, "Collection runs per circuit")->capture_default_str();
    col->add_option("--max-qubits", col_max_qubits, "Simulator qubit ceiling")->capture_default_str();
    col->add_option("--seed", col_seed, "RNG seed (QLEAK_SEED overrides)")->capture_default_str();
    col->add_option("--out", col_out, "Trace output directory")->required();

    // features
    auto *feat = app.add_subcommand("features", "Summarize traces into the feature CSV");
    std::string feat_traces, feat_out;
    feat->add_option("--traces", feat_traces, "Trace directory")->required();
    feat->add_option("--out", feat_out, "Summary CSV path")->required();

    // identify
    auto *ident = app.add_subcommand("identify", "Identify the circuit behind one probe trace");
    std::string id_db, id_refs, id_probe, id_out = "-", id_norm = "stored";
    std::uint32_t id_k = 5;
    ident->add_option("--db", id_db, "Summary CSV of the reference corpus")->required();
    ident->add_option("--refs", id_refs, "Reference trace directory")->required();
    ident->add_option("--probe", id_probe, "Probe trace file")->required();
    ident->add_option("--k", id_k, "Neighbors for range estimation")->capture_default_str();
    ident->add_option("--normalization", id_norm, "stored or refit")->capture_default_str();
    ident->add_option("--out", id_out, "Report JSON path ('-' for stdout)")->capture_default_str();

    // evaluate
    auto *evalc = app.add_subcommand("evaluate", "Leave-own-run-out identification over a corpus");
    std::string ev_db, ev_traces, ev_strata = "small=2:10,medium=11:27", ev_out = "-", ev_table, ev_norm = "stored";
    std::uint32_t ev_k = 5;
    evalc->add_option("--db", ev_db, "Summary CSV")->required();
    evalc->add_option("--traces", ev_traces, "Trace directory")->required();
    evalc->add_option("--k", ev_k, "Neighbors for range estimation")->capture_default_str();
    evalc->add_option("--strata", ev_strata, "Strata as name=lo:hi,...")->capture_default_str();
    evalc->add_option("--normalization", ev_norm, "stored or refit")->capture_default_str();
    evalc->add_option("--out", ev_out, "Metrics JSON path ('-' for stdout)")->capture_default_str();
    evalc->add_option("--table", ev_table, "Optional per-stratum CSV table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            const Range q = parse_range(gen_qubits, "--qubits");
            const Range g = parse_range(gen_gates, "--gates");
            std::size_t n = 0;
            check(qleak_generate_circuits(gen_count, q.lo, q.hi, g.lo, g.hi, effective_seed(gen_seed), gen_out.c_str(),
                                          &n));
            std::cerr << "wrote " << n << " circuits to " << gen_out << "\n";
        } else if (col->parsed()) {
            qleak_collect_config cfg;
            qleak_collect_config_default(&cfg);
            cfg.shots = col_shots;
            cfg.warmup_shots = col_warmup;
            cfg.outlier_rule = col_outliers == "none" ? QLEAK_OUTLIERS_NONE : QLEAK_OUTLIERS_IQR_1_5;
            cfg.mem_mode = col_mem == "os_probe" ? QLEAK_MEM_OS_PROBE : QLEAK_MEM_SYNTHETIC;
            cfg.max_qubits = col_max_qubits;
            std::size_t n = 0;
            check(qleak_collect_directory(col_circuits.c_str(), &cfg, col_runs, effective_seed(col_seed),
                                          col_out.c_str(), &n));
            std::cerr << "wrote " << n << " traces to " << col_out << "\n";
        } else if (feat->parsed()) {
            std::size_t rows = 0;
            check(qleak_write_features(feat_traces.c_str(), feat_out.c_str(), &rows));
            std::cerr << "wrote " << rows << " rows to " << feat_out << "\n";
        } else if (ident->parsed()) {
            qleak_eval_config cfg;
            qleak_eval_config_default(&cfg);
            cfg.k = id_k;
            cfg.normalization = parse_normalization(id_norm);
            OwnedString report;
            check(qleak_identify(id_db.c_str(), id_refs.c_str(), id_probe.c_str(), &cfg, report.out()));
            write_output(id_out, report.get());
        } else if (evalc->parsed()) {
            qleak_eval_config cfg;
            qleak_eval_config_default(&cfg);
            cfg.k = ev_k;
            cfg.strata = ev_strata.c_str();
            cfg.normalization = parse_normalization(ev_norm);
            OwnedString metrics, table;
            check(qleak_evaluate(ev_db.c_str(), ev_traces.c_str(), &cfg, metrics.out(), table.out()));
            write_output(ev_out, metrics.get());
            if (!ev_table.empty()) write_output(ev_table, table.get());
        }
    } catch (const UsageError &e) {
        std::cerr << "qleak: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "qleak: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
