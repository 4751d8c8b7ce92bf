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

// Test-only reference implementations used as independent oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qleak/features.hpp"
#include "qleak/infer.hpp"

namespace qleak::oracle {

struct RankedRow {
    double distance;
    std::string circuit;
    std::string run;
    std::int64_t label;
};

/// Distance to every eligible row, fully sorted by (distance, circuit, run).
inline std::vector<RankedRow> full_sort(const FeatureVector &probe, const NormalizedMatrix &db, LabelKind kind,
                                        const std::set<std::string> &exclude) {
    std::vector<RankedRow> rows;
    for (std::size_t r = 0; r < db.rows(); ++r) {
        if (exclude.count(db.run_ids[r])) continue;
        double ss = 0.0;
        for (std::size_t f = 0; f < kNumFeatures; ++f) ss += (probe[f] - db.values[r][f]) * (probe[f] - db.values[r][f]);
        const std::int64_t label = kind == LabelKind::Qubits ? std::int64_t(db.labels[r].n_qubits)
                                                             : std::int64_t(db.labels[r].total_gates);
        rows.push_back({std::sqrt(ss), db.circuit_names[r], db.run_ids[r], label});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const RankedRow &a, const RankedRow &b) {
        return std::tie(a.distance, a.circuit, a.run) < std::tie(b.distance, b.circuit, b.run);
    });
    return rows;
}

inline std::pair<std::int64_t, std::int64_t> range_of(const std::vector<RankedRow> &sorted, std::size_t k) {
    std::int64_t lo = sorted[0].label, hi = sorted[0].label;
    for (std::size_t i = 0; i < k; ++i) {
        lo = std::min(lo, sorted[i].label);
        hi = std::max(hi, sorted[i].label);
    }
    return {lo, hi};
}

inline std::int64_t mode_of(const std::vector<RankedRow> &sorted, std::size_t k) {
    std::map<std::int64_t, std::size_t> count, first_rank;
    for (std::size_t i = 0; i < k; ++i) {
        ++count[sorted[i].label];
        first_rank.emplace(sorted[i].label, i);
    }
    std::int64_t best = sorted[0].label;
    for (const auto &[label, c] : count) {
        if (c > count[best] || (c == count[best] && first_rank[label] < first_rank[best])) best = label;
    }
    return best;
}

/// W1 as the integral over u in [0,1] of |F^-1(u) - G^-1(u)|. The u-axis
/// breakpoints i/n and j/m are merged with integer arithmetic.
inline double wasserstein_quantile(std::vector<double> p, std::vector<double> q) {
    std::sort(p.begin(), p.end());
    std::sort(q.begin(), q.end());
    const std::uint64_t n = p.size(), m = q.size();
    const std::uint64_t L = std::lcm(n, m);
    // on (t/L, (t+1)/L) the quantile indices are t*n/L and t*m/L; walk only the breakpoints
    std::vector<std::uint64_t> cuts;
    for (std::uint64_t i = 0; i <= n; ++i) cuts.push_back(i * (L / n));
    for (std::uint64_t j = 0; j <= m; ++j) cuts.push_back(j * (L / m));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    long double total = 0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const std::uint64_t t = cuts[c];
        const double a = p[t / (L / n)];
        const double b = q[t / (L / m)];
        total += static_cast<long double>(cuts[c + 1] - t) * std::fabs(a - b);
    }
    return static_cast<double>(total / static_cast<long double>(L));
}

/// Counts unitary gate statements with a regex, one statement per line,
/// ignoring comments, measure and barrier.
inline std::size_t count_gate_lines(const std::string &path) {
    static const std::regex gate_line(R"(^\s*(h|x|y|z|s|sdg|t|tdg|rx|ry|rz|u1|u2|u3|cx|cz|swap|ccx)\s*[\s(].*;\s*(//.*)?$)");
    std::ifstream in(path);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (std::regex_match(line, gate_line)) ++count;
    }
    return count;
}

}  // namespace qleak::oracle
