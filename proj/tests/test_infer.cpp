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

#include <algorithm>
#include <random>

#include "oracles/brute_force.hpp"
#include "qleak/errors.hpp"
#include "qleak/infer.hpp"

namespace qleak {
namespace {

struct RowSpec {
    std::string circuit;
    std::string run;
    CircuitLabels labels;
    FeatureVector z;
};

NormalizedMatrix matrix_of(const std::vector<RowSpec> &rows) {
    NormalizedMatrix m;
    for (const RowSpec &r : rows) {
        m.circuit_names.push_back(r.circuit);
        m.run_ids.push_back(r.run);
        m.labels.push_back(r.labels);
        m.values.push_back(r.z);
    }
    return m;
}

FeatureVector along(double x) { return FeatureVector{x, 0, 0, 0, 0, 0, 0, 0}; }

// Random corpus with deliberately duplicated rows so ties exercise the tie-break.
NormalizedMatrix random_matrix(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_int_distribution<int> coarse(-3, 3);
    std::vector<RowSpec> rows;
    for (std::size_t i = 0; i < n; ++i) {
        FeatureVector z;
        for (double &v : z) v = coarse(rng) * 0.5;
        if (i > 0 && rng() % 4 == 0) z = rows[rng() % rows.size()].z;
        const std::uint32_t q = 2 + rng() % 9;
        rows.push_back({"c" + std::to_string(rng() % (n / 2 + 1)), "r" + std::to_string(i), {q, 5 + rng() % 200}, z});
    }
    return matrix_of(rows);
}

TEST(Infer, IdenticalRowRanksFirst) {
    const NormalizedMatrix m = matrix_of({{"a", "1", {2, 10}, along(0)}, {"b", "1", {4, 20}, along(1)},
                                          {"c", "1", {6, 30}, along(2)}});
    const auto nn = nearest_neighbors(along(1), m, 1, LabelKind::Qubits, {});
    ASSERT_EQ(nn.size(), 1u);
    EXPECT_EQ(nn[0].circuit_name, "b");
    EXPECT_EQ(nn[0].distance, 0.0);
}

TEST(Infer, FullKSpansCorpus) {
    const NormalizedMatrix m = matrix_of({{"a", "1", {2, 10}, along(0)}, {"b", "1", {4, 20}, along(1)},
                                          {"c", "1", {9, 300}, along(2)}});
    const LabelRange q = knn_range(along(0), m, 3, LabelKind::Qubits, {});
    const LabelRange g = knn_range(along(0), m, 3, LabelKind::Gates, {});
    EXPECT_EQ(q.lo, 2);
    EXPECT_EQ(q.hi, 9);
    EXPECT_EQ(g.lo, 10);
    EXPECT_EQ(g.hi, 300);
    EXPECT_EQ(q.neighbor_ids.size(), 3u);
    EXPECT_EQ(q.label_kind, LabelKind::Qubits);
}

TEST(Infer, InsufficientNeighbors) {
    const NormalizedMatrix m = matrix_of({{"a", "1", {2, 10}, along(0)}, {"b", "1", {4, 20}, along(1)}});
    EXPECT_THROW(knn_range(along(0), m, 3, LabelKind::Qubits, {}), InsufficientNeighbors);
    EXPECT_THROW(knn_range(along(0), m, 2, LabelKind::Qubits, {"1"}), InsufficientNeighbors);
    EXPECT_THROW(knn_point_estimate(along(0), m, 3, LabelKind::Qubits, {}), InsufficientNeighbors);
}

TEST(Infer, TwentyRowsMatchExhaustiveSort) {
    std::mt19937_64 rng(20);
    const NormalizedMatrix m = random_matrix(rng, 20);
    for (std::size_t p = 0; p < m.rows(); ++p) {
        const std::set<std::string> exclude{m.run_ids[p]};
        for (LabelKind kind : {LabelKind::Qubits, LabelKind::Gates}) {
            const auto sorted = oracle::full_sort(m.values[p], m, kind, exclude);
            const LabelRange r = knn_range(m.values[p], m, 5, kind, exclude);
            const auto [lo, hi] = oracle::range_of(sorted, 5);
            EXPECT_EQ(r.lo, lo);
            EXPECT_EQ(r.hi, hi);
            for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(r.neighbor_ids[i], sorted[i].circuit + "/" + sorted[i].run);
        }
    }
}

TEST(Infer, TieBreakByCircuitThenRun) {
    const NormalizedMatrix m = matrix_of({{"zeta", "1", {9, 1}, along(1)}, {"alpha", "2", {3, 1}, along(1)},
                                          {"alpha", "1", {5, 1}, along(-1)}, {"mid", "0", {7, 1}, along(5)}});
    const LabelRange r = knn_range(along(0), m, 2, LabelKind::Qubits, {});
    EXPECT_EQ(r.neighbor_ids, (std::vector<std::string>{"alpha/1", "alpha/2"}));
    EXPECT_EQ(r.lo, 3);
    EXPECT_EQ(r.hi, 5);
}

TEST(Infer, PointEstimateClearMode) {
    const NormalizedMatrix m =
        matrix_of({{"a", "1", {4, 1}, along(1)}, {"b", "1", {4, 1}, along(2)}, {"c", "1", {4, 1}, along(3)},
                   {"d", "1", {5, 1}, along(4)}, {"e", "1", {7, 1}, along(5)}, {"f", "1", {9, 1}, along(50)}});
    EXPECT_EQ(knn_point_estimate(along(0), m, 5, LabelKind::Qubits, {}), 4);
}

TEST(Infer, PointEstimateTieGoesToNearer) {
    const NormalizedMatrix m =
        matrix_of({{"a", "1", {5, 1}, along(1)}, {"b", "1", {4, 1}, along(2)}, {"c", "1", {4, 1}, along(3)},
                   {"d", "1", {5, 1}, along(4)}, {"e", "1", {6, 1}, along(5)}});
    EXPECT_EQ(knn_point_estimate(along(0), m, 5, LabelKind::Qubits, {}), 5);
    EXPECT_EQ(knn_point_estimate(along(0), m, 1, LabelKind::Qubits, {}), 5);
    EXPECT_EQ(knn_point_estimate(along(2.1), m, 1, LabelKind::Qubits, {}), 4);
}

TEST(Infer, PointEstimateMatchesOracle) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const NormalizedMatrix m = random_matrix(rng, 25);
        const std::size_t p = rng() % m.rows();
        const std::set<std::string> exclude{m.run_ids[p]};
        for (std::size_t k : {1u, 3u, 5u, 8u}) {
            const auto sorted = oracle::full_sort(m.values[p], m, LabelKind::Qubits, exclude);
            EXPECT_EQ(knn_point_estimate(m.values[p], m, k, LabelKind::Qubits, exclude), oracle::mode_of(sorted, k));
        }
    }
}

TEST(Infer, RangeMonotoneInK) {
    std::mt19937_64 rng(5);
    const NormalizedMatrix m = random_matrix(rng, 40);
    const FeatureVector probe = m.values[0];
    for (std::size_t k = 1; k < m.rows(); ++k) {
        const LabelRange a = knn_range(probe, m, k, LabelKind::Gates, {});
        const LabelRange b = knn_range(probe, m, k + 1, LabelKind::Gates, {});
        EXPECT_LE(b.lo, a.lo);
        EXPECT_GE(b.hi, a.hi);
    }
}

TEST(Infer, ExcludedRunNeverNeighbor) {
    std::mt19937_64 rng(6);
    const NormalizedMatrix m = random_matrix(rng, 30);
    for (std::size_t p = 0; p < m.rows(); ++p) {
        const LabelRange r = knn_range(m.values[p], m, 29, LabelKind::Qubits, {m.run_ids[p]});
        for (const std::string &id : r.neighbor_ids) EXPECT_NE(id.substr(id.find('/') + 1), m.run_ids[p]);
    }
}

TEST(Infer, RowOrderDoesNotChangeRanges) {
    std::mt19937_64 rng(8);
    const NormalizedMatrix m = random_matrix(rng, 30);
    std::vector<std::size_t> perm(m.rows());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    NormalizedMatrix s;
    for (std::size_t i : perm) {
        s.circuit_names.push_back(m.circuit_names[i]);
        s.run_ids.push_back(m.run_ids[i]);
        s.labels.push_back(m.labels[i]);
        s.values.push_back(m.values[i]);
    }
    for (std::size_t p = 0; p < m.rows(); ++p) {
        const LabelRange a = knn_range(m.values[p], m, 5, LabelKind::Qubits, {});
        const LabelRange b = knn_range(m.values[p], s, 5, LabelKind::Qubits, {});
        EXPECT_EQ(a.neighbor_ids, b.neighbor_ids);
        EXPECT_EQ(a.lo, b.lo);
        EXPECT_EQ(a.hi, b.hi);
    }
}

LabelRange range(std::int64_t lo, std::int64_t hi, LabelKind kind) {
    LabelRange r;
    r.lo = lo;
    r.hi = hi;
    r.label_kind = kind;
    return r;
}

TEST(Infer, IntersectFilterExamples) {
    const std::map<std::string, CircuitLabels> db{{"a", {4, 10}}, {"b", {4, 20}}, {"c", {4, 30}},
                                                  {"d", {3, 20}}, {"e", {6, 20}}, {"f", {4, 500}}};
    const CandidateSet all = intersect_filter(db, range(0, 100, LabelKind::Qubits), range(0, 1000, LabelKind::Gates));
    EXPECT_EQ(all.members.size(), db.size());

    const CandidateSet three = intersect_filter(db, range(4, 4, LabelKind::Qubits), range(10, 30, LabelKind::Gates));
    EXPECT_EQ(three.members, (std::set<std::string>{"a", "b", "c"}));

    const CandidateSet none = intersect_filter(db, range(3, 3, LabelKind::Qubits), range(100, 200, LabelKind::Gates));
    EXPECT_TRUE(none.members.empty());
    EXPECT_EQ(none.qubit_range.lo, 3);
    EXPECT_EQ(none.gate_range.hi, 200);
}

TEST(Infer, IntersectEqualsBruteForceIntersection) {
    std::mt19937_64 rng(10);
    std::map<std::string, CircuitLabels> db;
    for (int i = 0; i < 60; ++i) db["c" + std::to_string(i)] = {std::uint32_t(2 + rng() % 9), 5 + rng() % 200};
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t ql = 2 + rng() % 9, qh = ql + rng() % 4, gl = rng() % 200, gh = gl + rng() % 80;
        std::set<std::string> by_gate_first;
        for (const auto &[name, l] : db)
            if (gl <= std::int64_t(l.total_gates) && std::int64_t(l.total_gates) <= gh)
                by_gate_first.insert(name);
        std::erase_if(by_gate_first, [&](const std::string &n) {
            return std::int64_t(db.at(n).n_qubits) < ql || std::int64_t(db.at(n).n_qubits) > qh;
        });
        EXPECT_EQ(intersect_filter(db, range(ql, qh, LabelKind::Qubits), range(gl, gh, LabelKind::Gates)).members,
                  by_gate_first);
    }
}

TEST(Infer, CircuitLabelsCollapseRuns) {
    const NormalizedMatrix m = matrix_of({{"a", "1", {2, 10}, along(0)}, {"a", "2", {2, 10}, along(1)},
                                          {"b", "1", {3, 11}, along(2)}});
    const auto labels = circuit_labels(m);
    EXPECT_EQ(labels.size(), 2u);
    EXPECT_EQ(labels.at("a"), (CircuitLabels{2, 10}));
    const NormalizedMatrix bad = matrix_of({{"a", "1", {2, 10}, along(0)}, {"a", "2", {2, 11}, along(1)}});
    EXPECT_THROW(circuit_labels(bad), InvalidArgument);
}

TEST(Infer, DuplicateRunCoversTrueLabels) {
    std::mt19937_64 rng(12);
    NormalizedMatrix m = random_matrix(rng, 30);
    // give row 0 an exact twin under another run id
    m.circuit_names.push_back(m.circuit_names[0]);
    m.run_ids.push_back("twin");
    m.labels.push_back(m.labels[0]);
    m.values.push_back(m.values[0]);
    const std::set<std::string> exclude{m.run_ids[0]};
    EXPECT_TRUE(knn_range(m.values[0], m, 5, LabelKind::Qubits, exclude).contains(m.labels[0].n_qubits));
    EXPECT_TRUE(knn_range(m.values[0], m, 5, LabelKind::Gates, exclude).contains(m.labels[0].total_gates));
}

}  // namespace
}  // namespace qleak
