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

/*
 * qleak C API.
 *
 * Every fallible call returns a qleak_status; on failure the thread-local
 * message from qleak_last_error() describes the cause. Handles are opaque and
 * owned by the caller, who releases them with the matching *_free function.
 * Strings returned through `char **` out-parameters are heap-allocated and
 * must be released with qleak_string_free().
 */
#ifndef QLEAK_QLEAK_H
#define QLEAK_QLEAK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QLEAK_BUILDING_LIBRARY)
#    define QLEAK_API __declspec(dllexport)
#  else
#    define QLEAK_API __declspec(dllimport)
#  endif
#else
#  define QLEAK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qleak_status {
    QLEAK_OK = 0,
    QLEAK_E_SYNTAX = 1,
    QLEAK_E_UNSUPPORTED_GATE = 2,
    QLEAK_E_INDEX = 3,
    QLEAK_E_DIMENSION = 4,
    QLEAK_E_CAPACITY = 5,
    QLEAK_E_TOO_FEW_SAMPLES = 6,
    QLEAK_E_PROBE_UNAVAILABLE = 7,
    QLEAK_E_EMPTY_CORPUS = 8,
    QLEAK_E_INSUFFICIENT_NEIGHBORS = 9,
    QLEAK_E_EMPTY_DISTRIBUTION = 10,
    QLEAK_E_MISSING_REFERENCE = 11,
    QLEAK_E_UNCOVERED_LABEL = 12,
    QLEAK_E_IO = 13,
    QLEAK_E_INVALID_ARGUMENT = 14,
    QLEAK_E_INTERNAL = 99
} qleak_status;

typedef enum qleak_outlier_rule { QLEAK_OUTLIERS_IQR_1_5 = 0, QLEAK_OUTLIERS_NONE = 1 } qleak_outlier_rule;

typedef enum qleak_mem_mode { QLEAK_MEM_SYNTHETIC = 0, QLEAK_MEM_OS_PROBE = 1 } qleak_mem_mode;

typedef enum qleak_normalization {
    QLEAK_NORM_STORED_PARAMETERS = 0,
    QLEAK_NORM_REFIT_WITH_PROBE = 1
} qleak_normalization;

typedef struct qleak_circuit qleak_circuit;
typedef struct qleak_trace qleak_trace;
typedef struct qleak_database qleak_database;

typedef struct qleak_collect_config {
    uint32_t shots;
    uint32_t warmup_shots;
    qleak_outlier_rule outlier_rule;
    qleak_mem_mode mem_mode;
    uint32_t max_qubits;
} qleak_collect_config;

typedef struct qleak_eval_config {
    uint32_t k;
    const char *strata; /* "small=2:10,medium=11:27"; NULL selects the default */
    qleak_normalization normalization;
} qleak_eval_config;

QLEAK_API const char *qleak_version(void);
QLEAK_API const char *qleak_status_name(qleak_status status);
QLEAK_API const char *qleak_last_error(void);
QLEAK_API void qleak_string_free(char *s);

/* Circuits */
QLEAK_API qleak_status qleak_circuit_parse(const char *source, size_t length, const char *name, qleak_circuit **out);
QLEAK_API qleak_status qleak_circuit_load(const char *path, qleak_circuit **out);
QLEAK_API qleak_status qleak_circuit_generate(uint32_t n_qubits, uint32_t n_gates, uint64_t seed, const char *name,
                                              qleak_circuit **out);
QLEAK_API void qleak_circuit_free(qleak_circuit *circuit);
QLEAK_API const char *qleak_circuit_name(const qleak_circuit *circuit);
QLEAK_API const char *qleak_circuit_source_hash(const qleak_circuit *circuit);
QLEAK_API uint32_t qleak_circuit_n_qubits(const qleak_circuit *circuit);
/* Gates excluding measure and barrier. */
QLEAK_API uint64_t qleak_circuit_total_gates(const qleak_circuit *circuit);
/* Every statement entry, measure and barrier included. */
QLEAK_API size_t qleak_circuit_entry_count(const qleak_circuit *circuit);
QLEAK_API qleak_status qleak_circuit_emit(const qleak_circuit *circuit, char **qasm_out);

/* Simulation */
QLEAK_API uint64_t qleak_state_size_bytes(uint32_t n_qubits);
/* Final state as interleaved (re, im) pairs; `capacity` counts doubles and must be >= 2 * 2^n. */
QLEAK_API qleak_status qleak_simulate_state(const qleak_circuit *circuit, double *re_im, size_t capacity);
/* `bitstring` receives n_qubits characters plus a terminating NUL, qubit 0 rightmost. */
QLEAK_API qleak_status qleak_run_shot(const qleak_circuit *circuit, uint64_t seed, uint32_t max_qubits,
                                      char *bitstring, size_t capacity, uint64_t *elapsed_ns);

/* Collection */
QLEAK_API void qleak_collect_config_default(qleak_collect_config *config);
QLEAK_API qleak_status qleak_collect(const qleak_circuit *circuit, const qleak_collect_config *config, uint64_t seed,
                                     qleak_trace **out);
QLEAK_API qleak_status qleak_trace_load(const char *path, qleak_trace **out);
/* Writes <dir>/<circuit_name>.<run_id>.trace.json; `path_out` may be NULL. */
QLEAK_API qleak_status qleak_trace_save(const qleak_trace *trace, const char *dir, char **path_out);
QLEAK_API void qleak_trace_free(qleak_trace *trace);
QLEAK_API const char *qleak_trace_circuit_name(const qleak_trace *trace);
QLEAK_API const char *qleak_trace_run_id(const qleak_trace *trace);
QLEAK_API const uint64_t *qleak_trace_shots_ns(const qleak_trace *trace, size_t *count);
QLEAK_API const uint64_t *qleak_trace_kept_ns(const qleak_trace *trace, size_t *count);
QLEAK_API const uint64_t *qleak_trace_mem_deltas(const qleak_trace *trace, size_t *count);
/* `out` must hold n values; `n_out` receives the kept count. */
QLEAK_API qleak_status qleak_remove_outliers_iqr(const uint64_t *samples, size_t n, uint64_t *out, size_t *n_out);

/* Matching and evaluation helpers */
QLEAK_API qleak_status qleak_wasserstein_1d(const double *p, size_t np, const double *q, size_t nq, double *out);
QLEAK_API qleak_status qleak_stratify(uint32_t n_qubits, const char *strata, char **name_out);

/* Attacker database */
QLEAK_API void qleak_eval_config_default(qleak_eval_config *config);
QLEAK_API qleak_status qleak_database_open(const char *db_csv, const char *trace_dir, const qleak_eval_config *config,
                                           qleak_database **out);
QLEAK_API void qleak_database_free(qleak_database *db);
QLEAK_API size_t qleak_database_rows(const qleak_database *db);
QLEAK_API qleak_status qleak_database_identify(const qleak_database *db, const qleak_trace *probe,
                                               char **report_json);

/* File-level commands */
QLEAK_API qleak_status qleak_generate_circuits(uint32_t count, uint32_t qubits_lo, uint32_t qubits_hi,
                                               uint32_t gates_lo, uint32_t gates_hi, uint64_t seed,
                                               const char *out_dir, size_t *n_written);
QLEAK_API qleak_status qleak_collect_directory(const char *circuits_dir, const qleak_collect_config *config,
                                               uint32_t runs_per_circuit, uint64_t seed, const char *out_dir,
                                               size_t *n_written);
QLEAK_API qleak_status qleak_write_features(const char *trace_dir, const char *out_csv, size_t *n_rows);
QLEAK_API qleak_status qleak_identify(const char *db_csv, const char *refs_dir, const char *probe_file,
                                      const qleak_eval_config *config, char **report_json);
/* `strata_csv` may be NULL. */
QLEAK_API qleak_status qleak_evaluate(const char *db_csv, const char *trace_dir, const qleak_eval_config *config,
                                      char **metrics_json, char **strata_csv);

#ifdef __cplusplus
}
#endif

#endif /* QLEAK_QLEAK_H */
