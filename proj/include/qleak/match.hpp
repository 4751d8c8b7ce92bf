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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qleak/infer.hpp"

namespace qleak {

/// Sorted latency samples of one source (circuit_name/run_id, or a circuit
/// name when several runs are pooled).
class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;
    EmpiricalDistribution(std::vector<double> samples, std::string source);
    EmpiricalDistribution(std::span<const std::uint64_t> samples_ns, std::string source);

    const std::vector<double> &samples() const noexcept { return samples_; }
    const std::string &source() const noexcept { return source_; }
    std::size_t size() const noexcept { return samples_.size(); }

private:
    std::vector<double> samples_;
    std::string source_;
};

/// W1 = integral of |F_P(x) - F_Q(x)| dx, summed exactly over the merged
/// breakpoints. Handles unequal sample counts.
double wasserstein_1d(const EmpiricalDistribution &p, const EmpiricalDistribution &q);

/// Equal-size form: mean |p_(i) - q_(i)| over sorted pairs.
double wasserstein_1d_equal_size(const EmpiricalDistribution &p, const EmpiricalDistribution &q);

struct MatchRanking {
    std::string probe_source;
    std::vector<std::pair<std::string, double>> entries;  ///< ascending distance, then name

    bool empty() const { return entries.empty(); }
    const std::string &top1() const { return entries.front().first; }
};

MatchRanking rank_candidates(const EmpiricalDistribution &probe,
                             const std::map<std::string, EmpiricalDistribution> &refs,
                             const CandidateSet &candidates);

}  // namespace qleak
