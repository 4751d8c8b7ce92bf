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

#include "qleak/features.hpp"

#include <algorithm>
#include <cmath>

#include "qleak/errors.hpp"

namespace qleak {

namespace {

struct Moments {
    double mean;
    double variance;
};

template <typename T>
Moments population_moments(std::span<const T> xs) {
    double sum = 0.0;
    for (T x : xs) sum += static_cast<double>(x);
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (T x : xs) {
        const double d = static_cast<double>(x) - mean;
        ss += d * d;
    }
    return {mean, ss / static_cast<double>(xs.size())};
}

double divisor(double sd) { return sd > 0.0 ? sd : 1.0; }

}  // namespace

FeatureVector TimingProfile::features() const {
    return {avg_shot_time_ns, median_shot_time_ns, min_shot_time_ns,       max_shot_time_ns,
            std_shot_time_ns, timing_variance,     avg_memory_delta_bytes, max_memory_delta_bytes};
}

TimingProfile summarize(const ShotTrace &t, CircuitLabels labels) {
    if (t.kept_ns.size() < 2) {
        throw TooFewSamples(t.circuit_name + "/" + t.run_id + ": need at least 2 kept shots, got " +
                            std::to_string(t.kept_ns.size()));
    }
    if (t.mem_deltas_bytes.empty()) throw TooFewSamples(t.circuit_name + "/" + t.run_id + ": no memory deltas");

    TimingProfile p;
    p.circuit_name = t.circuit_name;
    p.run_id = t.run_id;
    p.labels = labels;

    const Moments m = population_moments<std::uint64_t>(t.kept_ns);
    std::vector<double> sorted(t.kept_ns.begin(), t.kept_ns.end());
    std::sort(sorted.begin(), sorted.end());
    p.avg_shot_time_ns = m.mean;
    p.median_shot_time_ns = quantile_sorted(sorted, 0.5);
    p.min_shot_time_ns = sorted.front();
    p.max_shot_time_ns = sorted.back();
    p.timing_variance = m.variance;
    p.std_shot_time_ns = std::sqrt(m.variance);

    const Moments mem = population_moments<std::uint64_t>(t.mem_deltas_bytes);
    p.avg_memory_delta_bytes = mem.mean;
    p.max_memory_delta_bytes =
        static_cast<double>(*std::max_element(t.mem_deltas_bytes.begin(), t.mem_deltas_bytes.end()));
    return p;
}

TimingProfile summarize(const ShotTrace &t) {
    return summarize(t, CircuitLabels{t.n_qubits, t.total_gates});
}

NormalizedMatrix fit_normalizer(std::span<const TimingProfile> profiles) {
    if (profiles.size() < 2) {
        throw EmptyCorpus("normalizer needs at least 2 profiles, got " + std::to_string(profiles.size()));
    }
    NormalizedMatrix norm;
    std::vector<FeatureVector> raw;
    raw.reserve(profiles.size());
    for (const TimingProfile &p : profiles) {
        norm.circuit_names.push_back(p.circuit_name);
        norm.run_ids.push_back(p.run_id);
        norm.labels.push_back(p.labels);
        raw.push_back(p.features());
    }
    std::vector<double> column(profiles.size());
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
        for (std::size_t r = 0; r < raw.size(); ++r) column[r] = raw[r][f];
        const Moments m = population_moments<double>(column);
        norm.col_means[f] = m.mean;
        norm.col_stds[f] = std::sqrt(m.variance);
    }
    norm.values.reserve(raw.size());
    for (const FeatureVector &row : raw) {
        FeatureVector z{};
        for (std::size_t f = 0; f < kNumFeatures; ++f) {
            z[f] = (row[f] - norm.col_means[f]) / divisor(norm.col_stds[f]);
        }
        norm.values.push_back(z);
    }
    return norm;
}

FeatureVector transform(const TimingProfile &probe, const NormalizedMatrix &norm) {
    const FeatureVector raw = probe.features();
    FeatureVector z{};
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
        z[f] = (raw[f] - norm.col_means[f]) / divisor(norm.col_stds[f]);
    }
    return z;
}

FeatureVector transform(const TimingProfile &probe, std::span<const TimingProfile> corpus,
                        const NormalizedMatrix &norm, NormalizationMode mode) {
    if (mode == NormalizationMode::StoredParameters) return transform(probe, norm);
    std::vector<TimingProfile> combined(corpus.begin(), corpus.end());
    combined.push_back(probe);
    return fit_normalizer(combined).values.back();
}

}  // namespace qleak
