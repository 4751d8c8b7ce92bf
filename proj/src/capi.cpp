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

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "qleak/errors.hpp"
#include "qleak/eval.hpp"
#include "qleak/io.hpp"
#include "qleak/qleak.h"
#include "qleak/workflow.hpp"

struct qleak_circuit {
    qleak::Circuit circuit;
};

struct qleak_trace {
    qleak::ShotTrace trace;
};

struct qleak_database {
    qleak::Identifier identifier;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
qleak_status guarded(F &&fn) {
    try {
        fn();
        g_last_error.clear();
        return QLEAK_OK;
    } catch (const qleak::Error &e) {
        g_last_error = e.what();
        return static_cast<qleak_status>(e.code());
    } catch (const std::bad_alloc &) {
        g_last_error = "out of memory";
        return QLEAK_E_CAPACITY;
    } catch (const std::filesystem::filesystem_error &e) {
        g_last_error = e.what();
        return QLEAK_E_IO;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return QLEAK_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QLEAK_E_INTERNAL;
    }
}

void require(bool ok, const char *what) {
    if (!ok) throw qleak::InvalidArgument(what);
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

qleak::CollectionConfig to_cpp(const qleak_collect_config *c) {
    qleak::CollectionConfig cfg;
    if (c == nullptr) return cfg;
    cfg.shots = c->shots;
    cfg.warmup_shots = c->warmup_shots;
    require(c->outlier_rule == QLEAK_OUTLIERS_IQR_1_5 || c->outlier_rule == QLEAK_OUTLIERS_NONE, "bad outlier rule");
    require(c->mem_mode == QLEAK_MEM_SYNTHETIC || c->mem_mode == QLEAK_MEM_OS_PROBE, "bad memory mode");
    cfg.outlier_rule = c->outlier_rule == QLEAK_OUTLIERS_NONE ? qleak::OutlierRule::None : qleak::OutlierRule::Iqr1_5;
    cfg.mem_mode = c->mem_mode == QLEAK_MEM_OS_PROBE ? qleak::MemMode::OsProbe : qleak::MemMode::DeterministicSynthetic;
    cfg.sim.max_qubits = c->max_qubits;
    return cfg;
}

qleak::EvalConfig to_cpp(const qleak_eval_config *c) {
    qleak::EvalConfig cfg;
    if (c == nullptr) return cfg;
    cfg.k = c->k;
    if (c->strata != nullptr) cfg.strata = qleak::parse_strata(c->strata);
    cfg.normalization = c->normalization == QLEAK_NORM_REFIT_WITH_PROBE ? qleak::NormalizationMode::RefitWithProbe
                                                                        : qleak::NormalizationMode::StoredParameters;
    return cfg;
}

}  // namespace

extern "C" {

const char *qleak_version(void) { return "0.1.0"; }

const char *qleak_status_name(qleak_status status) {
    if (status == QLEAK_OK) return "OK";
    if (status == QLEAK_E_INTERNAL) return "InternalError";
    if (status >= QLEAK_E_SYNTAX && status <= QLEAK_E_INVALID_ARGUMENT) {
        return qleak::error_code_name(static_cast<qleak::ErrorCode>(status));
    }
    return "UnknownStatus";
}

const char *qleak_last_error(void) { return g_last_error.c_str(); }

void qleak_string_free(char *s) { std::free(s); }

qleak_status qleak_circuit_parse(const char *source, size_t length, const char *name, qleak_circuit **out) {
    return guarded([&] {
        require(out != nullptr && source != nullptr, "null argument");
        *out = nullptr;
        auto c = std::make_unique<qleak_circuit>();
        c->circuit = qleak::parse_qasm(std::string_view(source, length), name != nullptr ? name : "circuit");
        *out = c.release();
    });
}

qleak_status qleak_circuit_load(const char *path, qleak_circuit **out) {
    return guarded([&] {
        require(out != nullptr && path != nullptr, "null argument");
        *out = nullptr;
        auto c = std::make_unique<qleak_circuit>();
        c->circuit = qleak::load_qasm_file(path);
        *out = c.release();
    });
}

qleak_status qleak_circuit_generate(uint32_t n_qubits, uint32_t n_gates, uint64_t seed, const char *name,
                                    qleak_circuit **out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = nullptr;
        auto c = std::make_unique<qleak_circuit>();
        c->circuit = qleak::gen_random_circuit(n_qubits, n_gates, seed, name != nullptr ? name : "random");
        *out = c.release();
    });
}

void qleak_circuit_free(qleak_circuit *circuit) { delete circuit; }

const char *qleak_circuit_name(const qleak_circuit *circuit) {
    return circuit != nullptr ? circuit->circuit.name.c_str() : "";
}

const char *qleak_circuit_source_hash(const qleak_circuit *circuit) {
    return circuit != nullptr ? circuit->circuit.source_hash.c_str() : "";
}

uint32_t qleak_circuit_n_qubits(const qleak_circuit *circuit) {
    return circuit != nullptr ? circuit->circuit.n_qubits : 0;
}

uint64_t qleak_circuit_total_gates(const qleak_circuit *circuit) {
    return circuit != nullptr ? qleak::total_gates(circuit->circuit) : 0;
}

size_t qleak_circuit_entry_count(const qleak_circuit *circuit) {
    return circuit != nullptr ? circuit->circuit.gates.size() : 0;
}

qleak_status qleak_circuit_emit(const qleak_circuit *circuit, char **qasm_out) {
    return guarded([&] {
        require(circuit != nullptr && qasm_out != nullptr, "null argument");
        *qasm_out = dup_string(qleak::emit_qasm(circuit->circuit));
    });
}

uint64_t qleak_state_size_bytes(uint32_t n_qubits) { return qleak::state_size_bytes(n_qubits); }

qleak_status qleak_simulate_state(const qleak_circuit *circuit, double *re_im, size_t capacity) {
    return guarded([&] {
        require(circuit != nullptr && re_im != nullptr, "null argument");
        const auto &c = circuit->circuit;
        if (c.n_qubits > 30) throw qleak::CapacityError("state too large to export");
        require(capacity >= (std::size_t{2} << c.n_qubits), "buffer too small for state vector");
        qleak::StateVector state(c.n_qubits);
        for (const qleak::Gate &g : c.gates) qleak::apply_gate(state, g);
        for (std::size_t i = 0; i < state.size(); ++i) {
            re_im[2 * i] = state.amplitudes()[i].real();
            re_im[2 * i + 1] = state.amplitudes()[i].imag();
        }
    });
}

qleak_status qleak_run_shot(const qleak_circuit *circuit, uint64_t seed, uint32_t max_qubits, char *bitstring,
                            size_t capacity, uint64_t *elapsed_ns) {
    return guarded([&] {
        require(circuit != nullptr && bitstring != nullptr, "null argument");
        require(capacity > circuit->circuit.n_qubits, "bitstring buffer too small");
        qleak::SimConfig cfg;
        cfg.max_qubits = max_qubits;
        const qleak::ShotResult r = qleak::run_shot(circuit->circuit, seed, cfg);
        std::memcpy(bitstring, r.bitstring.c_str(), r.bitstring.size() + 1);
        if (elapsed_ns != nullptr) *elapsed_ns = r.elapsed_ns;
    });
}

void qleak_collect_config_default(qleak_collect_config *config) {
    if (config == nullptr) return;
    const qleak::CollectionConfig d;
    config->shots = d.shots;
    config->warmup_shots = d.warmup_shots;
    config->outlier_rule = QLEAK_OUTLIERS_IQR_1_5;
    config->mem_mode = QLEAK_MEM_SYNTHETIC;
    config->max_qubits = d.sim.max_qubits;
}

qleak_status qleak_collect(const qleak_circuit *circuit, const qleak_collect_config *config, uint64_t seed,
                           qleak_trace **out) {
    return guarded([&] {
        require(circuit != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        auto t = std::make_unique<qleak_trace>();
        t->trace = qleak::collect(circuit->circuit, to_cpp(config), seed);
        *out = t.release();
    });
}

qleak_status qleak_trace_load(const char *path, qleak_trace **out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        auto t = std::make_unique<qleak_trace>();
        t->trace = qleak::io::read_trace(path);
        *out = t.release();
    });
}

qleak_status qleak_trace_save(const qleak_trace *trace, const char *dir, char **path_out) {
    return guarded([&] {
        require(trace != nullptr && dir != nullptr, "null argument");
        const std::string path = (std::filesystem::path(dir) / qleak::io::trace_filename(trace->trace)).string();
        qleak::io::write_trace(path, trace->trace);
        if (path_out != nullptr) *path_out = dup_string(path);
    });
}

void qleak_trace_free(qleak_trace *trace) { delete trace; }

const char *qleak_trace_circuit_name(const qleak_trace *trace) {
    return trace != nullptr ? trace->trace.circuit_name.c_str() : "";
}

const char *qleak_trace_run_id(const qleak_trace *trace) { return trace != nullptr ? trace->trace.run_id.c_str() : ""; }

static const uint64_t *span_out(const std::vector<std::uint64_t> &v, size_t *count) {
    if (count != nullptr) *count = v.size();
    return v.data();
}

const uint64_t *qleak_trace_shots_ns(const qleak_trace *trace, size_t *count) {
    return trace != nullptr ? span_out(trace->trace.shots_ns, count) : nullptr;
}

const uint64_t *qleak_trace_kept_ns(const qleak_trace *trace, size_t *count) {
    return trace != nullptr ? span_out(trace->trace.kept_ns, count) : nullptr;
}

const uint64_t *qleak_trace_mem_deltas(const qleak_trace *trace, size_t *count) {
    return trace != nullptr ? span_out(trace->trace.mem_deltas_bytes, count) : nullptr;
}

qleak_status qleak_remove_outliers_iqr(const uint64_t *samples, size_t n, uint64_t *out, size_t *n_out) {
    return guarded([&] {
        require((samples != nullptr || n == 0) && out != nullptr && n_out != nullptr, "null argument");
        const auto kept = qleak::remove_outliers_iqr(std::span<const std::uint64_t>(samples, n));
        std::copy(kept.begin(), kept.end(), out);
        *n_out = kept.size();
    });
}

qleak_status qleak_wasserstein_1d(const double *p, size_t np, const double *q, size_t nq, double *out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        if (p == nullptr || np == 0 || q == nullptr || nq == 0) {
            throw qleak::EmptyDistribution("Wasserstein distance of an empty distribution");
        }
        const qleak::EmpiricalDistribution dp(std::vector<double>(p, p + np), "p");
        const qleak::EmpiricalDistribution dq(std::vector<double>(q, q + nq), "q");
        *out = qleak::wasserstein_1d(dp, dq);
    });
}

qleak_status qleak_stratify(uint32_t n_qubits, const char *strata, char **name_out) {
    return guarded([&] {
        require(name_out != nullptr, "null argument");
        const auto bounds = strata != nullptr ? qleak::parse_strata(strata) : qleak::default_strata();
        *name_out = dup_string(qleak::stratify(n_qubits, bounds));
    });
}

void qleak_eval_config_default(qleak_eval_config *config) {
    if (config == nullptr) return;
    config->k = 5;
    config->strata = nullptr;
    config->normalization = QLEAK_NORM_STORED_PARAMETERS;
}

qleak_status qleak_database_open(const char *db_csv, const char *trace_dir, const qleak_eval_config *config,
                                 qleak_database **out) {
    return guarded([&] {
        require(db_csv != nullptr && trace_dir != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        *out = new qleak_database{qleak::Identifier(qleak::workflow::load_database(db_csv, trace_dir), to_cpp(config))};
    });
}

void qleak_database_free(qleak_database *db) { delete db; }

size_t qleak_database_rows(const qleak_database *db) { return db != nullptr ? db->identifier.normalizer().rows() : 0; }

qleak_status qleak_database_identify(const qleak_database *db, const qleak_trace *probe, char **report_json) {
    return guarded([&] {
        require(db != nullptr && probe != nullptr && report_json != nullptr, "null argument");
        const qleak::TimingProfile profile = qleak::summarize(probe->trace);
        const auto report = db->identifier.identify(profile, probe->trace);
        *report_json = dup_string(qleak::io::report_to_json(report, db->identifier.config()));
    });
}

qleak_status qleak_generate_circuits(uint32_t count, uint32_t qubits_lo, uint32_t qubits_hi, uint32_t gates_lo,
                                     uint32_t gates_hi, uint64_t seed, const char *out_dir, size_t *n_written) {
    return guarded([&] {
        require(out_dir != nullptr, "null argument");
        qleak::workflow::GenerateOptions opt;
        opt.count = count;
        opt.qubits_lo = qubits_lo;
        opt.qubits_hi = qubits_hi;
        opt.gates_lo = gates_lo;
        opt.gates_hi = gates_hi;
        opt.seed = seed;
        opt.out_dir = out_dir;
        const auto paths = qleak::workflow::generate_circuits(opt);
        if (n_written != nullptr) *n_written = paths.size();
    });
}

qleak_status qleak_collect_directory(const char *circuits_dir, const qleak_collect_config *config,
                                     uint32_t runs_per_circuit, uint64_t seed, const char *out_dir,
                                     size_t *n_written) {
    return guarded([&] {
        require(circuits_dir != nullptr && out_dir != nullptr, "null argument");
        qleak::workflow::CollectOptions opt;
        opt.circuits_dir = circuits_dir;
        opt.out_dir = out_dir;
        opt.config = to_cpp(config);
        opt.runs_per_circuit = runs_per_circuit;
        opt.seed = seed;
        const auto paths = qleak::workflow::collect_directory(opt);
        if (n_written != nullptr) *n_written = paths.size();
    });
}

qleak_status qleak_write_features(const char *trace_dir, const char *out_csv, size_t *n_rows) {
    return guarded([&] {
        require(trace_dir != nullptr && out_csv != nullptr, "null argument");
        const std::size_t rows = qleak::workflow::write_features(trace_dir, out_csv);
        if (n_rows != nullptr) *n_rows = rows;
    });
}

qleak_status qleak_identify(const char *db_csv, const char *refs_dir, const char *probe_file,
                            const qleak_eval_config *config, char **report_json) {
    return guarded([&] {
        require(db_csv != nullptr && refs_dir != nullptr && probe_file != nullptr && report_json != nullptr,
                "null argument");
        *report_json = dup_string(qleak::workflow::identify_to_json(db_csv, refs_dir, probe_file, to_cpp(config)));
    });
}

qleak_status qleak_evaluate(const char *db_csv, const char *trace_dir, const qleak_eval_config *config,
                            char **metrics_json, char **strata_csv) {
    return guarded([&] {
        require(db_csv != nullptr && trace_dir != nullptr && metrics_json != nullptr, "null argument");
        const auto out = qleak::workflow::evaluate_to_json(db_csv, trace_dir, to_cpp(config));
        char *json = dup_string(out.metrics_json);
        if (strata_csv != nullptr) {
            try {
                *strata_csv = dup_string(out.strata_csv);
            } catch (...) {
                std::free(json);
                throw;
            }
        }
        *metrics_json = json;
    });
}

}  // extern "C"
