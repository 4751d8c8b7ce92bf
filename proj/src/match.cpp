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

#include "qleak/match.hpp"

#include <algorithm>
#include <cmath>

#include "qleak/errors.hpp"

namespace qleak {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples, std::string source)
    : samples_(std::move(samples)), source_(std::move(source)) {
    if (samples_.empty()) throw EmptyDistribution("distribution '" + source_ + "' has no samples");
    std::sort(samples_.begin(), samples_.end());
}

EmpiricalDistribution::EmpiricalDistribution(std::span<const std::uint64_t> samples_ns, std::string source)
    : EmpiricalDistribution(std::vector<double>(samples_ns.begin(), samples_ns.end()), std::move(source)) {}

double wasserstein_1d(const EmpiricalDistribution &p, const EmpiricalDistribution &q) {
    if (p.size() == 0 || q.size() == 0) throw EmptyDistribution("Wasserstein distance of an empty distribution");
    const auto &a = p.samples();
    const auto &b = q.samples();
    const double n = static_cast<double>(a.size());
    const double m = static_cast<double>(b.size());

    // The CDF gap between breakpoints is |i/n - j/m| = |i*m - j*n| / (n*m);
    // accumulate the integer-scaled gap and divide once.
    std::size_t i = 0, j = 0;
    double x = std::min(a.front(), b.front());
    double acc = 0.0;
    while (i < a.size() || j < b.size()) {
        double next;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j])) {
            next = a[i];
        } else {
            next = b[j];
        }
        const double gap = std::fabs(static_cast<double>(i) * m - static_cast<double>(j) * n);
        acc += (next - x) * gap;
        x = next;
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
    }
    return acc / (n * m);
}

double wasserstein_1d_equal_size(const EmpiricalDistribution &p, const EmpiricalDistribution &q) {
    if (p.size() == 0 || q.size() == 0) throw EmptyDistribution("Wasserstein distance of an empty distribution");
    if (p.size() != q.size()) throw InvalidArgument("equal-size Wasserstein needs equal sample counts");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::fabs(p.samples()[i] - q.samples()[i]);
    return acc / static_cast<double>(p.size());
}

MatchRanking rank_candidates(const EmpiricalDistribution &probe,
                             const std::map<std::string, EmpiricalDistribution> &refs,
                             const CandidateSet &candidates) {
    MatchRanking ranking;
    ranking.probe_source = probe.source();
    for (const std::string &name : candidates.members) {
        auto it = refs.find(name);
        if (it == refs.end()) throw MissingReference("candidate '" + name + "' has no prerecorded reference trace");
        ranking.entries.emplace_back(name, wasserstein_1d(probe, it->second));
    }
    std::sort(ranking.entries.begin(), ranking.entries.end(), [](const auto &l, const auto &r) {
        return l.second != r.second ? l.second < r.second : l.first < r.first;
    });
    return ranking;
}

}  // namespace qleak
