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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qleak/trace.hpp"

namespace qleak {

inline constexpr std::size_t kNumFeatures = 8;
using FeatureVector = std::array<double, kNumFeatures>;

inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "avg_shot_time_ns", "median_shot_time_ns", "min_shot_time_ns",       "max_shot_time_ns",
    "std_shot_time_ns", "timing_variance",     "avg_memory_delta_bytes", "max_memory_delta_bytes",
};

struct CircuitLabels {
    std::uint32_t n_qubits = 0;
    std::uint64_t total_gates = 0;

    friend bool operator==(const CircuitLabels &, const CircuitLabels &) = default;
};

/// One row of the summary CSV: identity, labels, and the 8 side-channel features.
struct TimingProfile {
    std::string circuit_name;
    std::string run_id;
    CircuitLabels labels;
    double avg_shot_time_ns = 0;
    double median_shot_time_ns = 0;
    double min_shot_time_ns = 0;
    double max_shot_time_ns = 0;
    double std_shot_time_ns = 0;
    double timing_variance = 0;
    double avg_memory_delta_bytes = 0;
    double max_memory_delta_bytes = 0;

    /// Feature columns in kFeatureNames order; labels are never included.
    FeatureVector features() const;
};

/// Population statistics over kept_ns (and over mem_deltas_bytes for the memory columns).
TimingProfile summarize(const ShotTrace &t, CircuitLabels labels);

/// summarize() with the labels recorded in the trace.
TimingProfile summarize(const ShotTrace &t);

enum class NormalizationMode {
    StoredParameters,  ///< probes use the corpus mu/sigma
    RefitWithProbe,    ///< mu/sigma recomputed over corpus + probe
};

/// z-scored corpus plus the column parameters used to produce it.
struct NormalizedMatrix {
    std::vector<std::string> circuit_names;
    std::vector<std::string> run_ids;
    std::vector<CircuitLabels> labels;
    std::vector<FeatureVector> values;
    FeatureVector col_means{};
    FeatureVector col_stds{};  ///< population std; 0 when the column is constant

    std::size_t rows() const { return values.size(); }
};

NormalizedMatrix fit_normalizer(std::span<const TimingProfile> profiles);

/// Applies the stored column parameters. A zero std divides by 1.
FeatureVector transform(const TimingProfile &probe, const NormalizedMatrix &norm);

/// Dispatches on the mode; RefitWithProbe refits over corpus + probe and
/// returns the probe's row from that fit.
FeatureVector transform(const TimingProfile &probe, std::span<const TimingProfile> corpus,
                        const NormalizedMatrix &norm, NormalizationMode mode);

}  // namespace qleak
