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

#include "qleak/infer.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "qleak/errors.hpp"

namespace qleak {

std::string_view label_kind_name(LabelKind kind) { return kind == LabelKind::Qubits ? "qubits" : "gates"; }

std::int64_t label_of(const CircuitLabels &labels, LabelKind kind) {
    return kind == LabelKind::Qubits ? static_cast<std::int64_t>(labels.n_qubits)
                                     : static_cast<std::int64_t>(labels.total_gates);
}

double euclidean(const FeatureVector &a, const FeatureVector &b) {
    double ss = 0.0;
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
        const double d = a[f] - b[f];
        ss += d * d;
    }
    return std::sqrt(ss);
}

std::vector<Neighbor> nearest_neighbors(const FeatureVector &probe_z, const NormalizedMatrix &db, std::size_t k,
                                        LabelKind kind, const std::set<std::string> &exclude_run_ids) {
    if (k == 0) throw InvalidArgument("k must be positive");
    std::vector<Neighbor> all;
    all.reserve(db.rows());
    for (std::size_t r = 0; r < db.rows(); ++r) {
        if (exclude_run_ids.count(db.run_ids[r]) != 0) continue;
        all.push_back(Neighbor{r, db.circuit_names[r], db.run_ids[r], euclidean(probe_z, db.values[r]),
                               label_of(db.labels[r], kind)});
    }
    if (all.size() < k) {
        throw InsufficientNeighbors("need " + std::to_string(k) + " neighbors, database has " +
                                    std::to_string(all.size()) + " eligible rows");
    }
    auto key = [](const Neighbor &n) { return std::tie(n.distance, n.circuit_name, n.run_id); };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                      [&](const Neighbor &a, const Neighbor &b) { return key(a) < key(b); });
    all.resize(k);
    return all;
}

LabelRange knn_range(const FeatureVector &probe_z, const NormalizedMatrix &db, std::size_t k, LabelKind kind,
                     const std::set<std::string> &exclude_run_ids) {
    const std::vector<Neighbor> nn = nearest_neighbors(probe_z, db, k, kind, exclude_run_ids);
    LabelRange range;
    range.label_kind = kind;
    range.lo = nn.front().label;
    range.hi = nn.front().label;
    for (const Neighbor &n : nn) {
        range.lo = std::min(range.lo, n.label);
        range.hi = std::max(range.hi, n.label);
        range.neighbor_ids.push_back(n.circuit_name + "/" + n.run_id);
        range.neighbor_distances.push_back(n.distance);
    }
    return range;
}

std::int64_t knn_point_estimate(const FeatureVector &probe_z, const NormalizedMatrix &db, std::size_t k,
                                LabelKind kind, const std::set<std::string> &exclude_run_ids) {
    const std::vector<Neighbor> nn = nearest_neighbors(probe_z, db, k, kind, exclude_run_ids);
    // Neighbors are nearest first, so the first label to reach the top count wins ties.
    std::int64_t best = nn.front().label;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < nn.size(); ++i) {
        const std::int64_t label = nn[i].label;
        bool seen_before = false;
        for (std::size_t j = 0; j < i; ++j) seen_before = seen_before || nn[j].label == label;
        if (seen_before) continue;
        const auto count = static_cast<std::size_t>(
            std::count_if(nn.begin(), nn.end(), [&](const Neighbor &n) { return n.label == label; }));
        if (count > best_count) {
            best = label;
            best_count = count;
        }
    }
    return best;
}

std::map<std::string, CircuitLabels> circuit_labels(const NormalizedMatrix &db) {
    std::map<std::string, CircuitLabels> out;
    for (std::size_t r = 0; r < db.rows(); ++r) {
        auto [it, inserted] = out.emplace(db.circuit_names[r], db.labels[r]);
        if (!inserted && !(it->second == db.labels[r])) {
            throw InvalidArgument("circuit '" + db.circuit_names[r] + "' has conflicting labels across runs");
        }
    }
    return out;
}

CandidateSet intersect_filter(const std::map<std::string, CircuitLabels> &db_labels, const LabelRange &qubit_range,
                              const LabelRange &gate_range) {
    CandidateSet out;
    out.qubit_range = qubit_range;
    out.gate_range = gate_range;
    std::vector<const std::pair<const std::string, CircuitLabels> *> survivors;
    for (const auto &entry : db_labels) {
        if (qubit_range.contains(label_of(entry.second, LabelKind::Qubits))) survivors.push_back(&entry);
    }
    for (const auto *entry : survivors) {
        if (gate_range.contains(label_of(entry->second, LabelKind::Gates))) out.members.insert(entry->first);
    }
    return out;
}

}  // namespace qleak
