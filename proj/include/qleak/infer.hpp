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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qleak/features.hpp"

namespace qleak {

enum class LabelKind { Qubits, Gates };

std::string_view label_kind_name(LabelKind kind);

struct Neighbor {
    std::size_t row = 0;
    std::string circuit_name;
    std::string run_id;
    double distance = 0;
    std::int64_t label = 0;
};

/// [lo, hi] spanned by the labels of the k nearest neighbors.
struct LabelRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    LabelKind label_kind = LabelKind::Qubits;
    std::vector<std::string> neighbor_ids;  ///< "circuit/run_id", nearest first
    std::vector<double> neighbor_distances;

    bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
    std::int64_t width() const { return hi - lo; }
};

struct CandidateSet {
    std::set<std::string> members;
    LabelRange qubit_range;
    LabelRange gate_range;
};

std::int64_t label_of(const CircuitLabels &labels, LabelKind kind);

double euclidean(const FeatureVector &a, const FeatureVector &b);

/// The k nearest non-excluded rows, ordered by (distance, circuit_name, run_id).
std::vector<Neighbor> nearest_neighbors(const FeatureVector &probe_z, const NormalizedMatrix &db, std::size_t k,
                                        LabelKind kind, const std::set<std::string> &exclude_run_ids);

LabelRange knn_range(const FeatureVector &probe_z, const NormalizedMatrix &db, std::size_t k, LabelKind kind,
                     const std::set<std::string> &exclude_run_ids);

/// Mode of the k neighbor labels; among tied labels the one held by the
/// nearest neighbor wins.
std::int64_t knn_point_estimate(const FeatureVector &probe_z, const NormalizedMatrix &db, std::size_t k,
                                LabelKind kind, const std::set<std::string> &exclude_run_ids);

/// Collapses per-run labels into one row per circuit. Throws InvalidArgument
/// when two runs of a circuit disagree.
std::map<std::string, CircuitLabels> circuit_labels(const NormalizedMatrix &db);

/// Circuits inside both ranges. Qubit pass first, then gates.
CandidateSet intersect_filter(const std::map<std::string, CircuitLabels> &db_labels, const LabelRange &qubit_range,
                              const LabelRange &gate_range);

}  // namespace qleak
