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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qleak/features.hpp"
#include "qleak/infer.hpp"
#include "qleak/match.hpp"
#include "qleak/qasm.hpp"
#include "qleak/trace.hpp"

namespace qleak {

/// The attacker's prerecorded corpus: one summary row per run plus the raw
/// traces that back the reference distributions.
struct ProfileDatabase {
    std::vector<TimingProfile> profiles;
    std::vector<ShotTrace> traces;
};

struct Stratum {
    std::string name;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

/// small = 2..10 qubits, medium = 11..27 qubits.
std::vector<Stratum> default_strata();

/// Parses "small=2:10,medium=11:27". Rejects overlapping or inverted bounds.
std::vector<Stratum> parse_strata(std::string_view spec);

/// Name of the stratum containing n_qubits; throws UncoveredLabel.
std::string stratify(std::int64_t n_qubits, const std::vector<Stratum> &bounds);

struct EvalConfig {
    std::size_t k = 5;
    std::vector<Stratum> strata = default_strata();
    NormalizationMode normalization = NormalizationMode::StoredParameters;
};

enum class FailureMode { None, QubitRangeMiss, GateRangeMiss, EmptyCandidates, WassersteinMiss };

std::string_view failure_mode_name(FailureMode mode);

struct IdentificationReport {
    std::string probe_circuit;
    std::string probe_run_id;
    CircuitLabels true_labels;
    std::string stratum;
    LabelRange qubit_range;
    LabelRange gate_range;
    bool qubit_covered = false;
    bool gate_covered = false;
    std::size_t candidate_count = 0;
    std::vector<std::string> candidates;
    MatchRanking ranking;
    std::string predicted_circuit;
    bool top1_correct = false;
    FailureMode failure_mode = FailureMode::None;
    std::int64_t knn_point_qubits = 0;  ///< point-estimate baseline
};

struct MetricsBlock {
    std::size_t n_probes = 0;
    double range_coverage_qubits = 0;
    double range_coverage_gates = 0;
    double mean_range_width_qubits = 0;
    double mean_range_width_gates = 0;
    double mean_candidate_count = 0;
    double top1_accuracy = 0;
    double knn_point_accuracy_qubits = 0;
    double knn_point_mae_qubits = 0;
    std::map<std::string, std::size_t> failure_modes;
};

struct MetricsSummary {
    MetricsBlock overall;
    std::map<std::string, MetricsBlock> strata;
};

MetricsBlock aggregate(const std::vector<const IdentificationReport *> &reports);

/// Fitted attacker state: normalizer over the whole database plus per-run
/// reference samples. Probes are identified leave-own-run-out.
class Identifier {
public:
    Identifier(ProfileDatabase db, EvalConfig cfg);

    /// Runs transform -> knn_range x2 -> intersect_filter -> rank_candidates.
    /// The probe's run_id is excluded from neighbors, labels, and references.
    IdentificationReport identify(const TimingProfile &probe, const ShotTrace &probe_trace) const;

    const NormalizedMatrix &normalizer() const { return norm_; }
    const EvalConfig &config() const { return cfg_; }

private:
    ProfileDatabase db_;
    EvalConfig cfg_;
    NormalizedMatrix norm_;
    std::map<std::string, std::size_t> trace_by_run_;  ///< run_id -> index into db_.traces
};

struct EvaluationResult {
    std::vector<IdentificationReport> reports;
    MetricsSummary summary;
};

/// Identifies every probe and aggregates overall and per-stratum metrics.
/// Throws MissingReference when a probe's circuit has no other run.
EvaluationResult evaluate_corpus(const ProfileDatabase &db,
                                 const std::vector<std::pair<TimingProfile, ShotTrace>> &probes,
                                 const EvalConfig &cfg);

/// Uniform over the supported unitary kinds that fit in n_qubits, distinct
/// operands, angles uniform in [0, 2pi). Deterministic per seed.
Circuit gen_random_circuit(std::uint32_t n_qubits, std::uint32_t n_gates, std::uint64_t seed,
                           std::string name = "random");

}  // namespace qleak
