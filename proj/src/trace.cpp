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

#include "qleak/trace.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

#include "qleak/errors.hpp"

namespace qleak {

std::string_view outlier_rule_name(OutlierRule rule) {
    return rule == OutlierRule::Iqr1_5 ? "iqr_1_5" : "none";
}

OutlierRule parse_outlier_rule(std::string_view text) {
    if (text == "iqr_1_5") return OutlierRule::Iqr1_5;
    if (text == "none") return OutlierRule::None;
    throw InvalidArgument("unknown outlier rule '" + std::string(text) + "'");
}

std::string_view mem_mode_name(MemMode mode) {
    return mode == MemMode::OsProbe ? "os_probe" : "deterministic_synthetic";
}

MemMode parse_mem_mode(std::string_view text) {
    if (text == "os_probe") return MemMode::OsProbe;
    if (text == "deterministic_synthetic" || text == "synthetic") return MemMode::DeterministicSynthetic;
    throw InvalidArgument("unknown memory mode '" + std::string(text) + "'");
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw TooFewSamples("quantile of empty sample");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

std::vector<std::uint64_t> remove_outliers_iqr(std::span<const std::uint64_t> samples) {
    if (samples.size() < 4) {
        throw TooFewSamples("outlier removal needs at least 4 samples, got " + std::to_string(samples.size()));
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double q1 = quantile_sorted(sorted, 0.25);
    const double q3 = quantile_sorted(sorted, 0.75);
    const double iqr = q3 - q1;
    const double lo = q1 - 1.5 * iqr;
    const double hi = q3 + 1.5 * iqr;
    std::vector<std::uint64_t> kept;
    kept.reserve(samples.size());
    for (std::uint64_t x : samples) {
        const auto v = static_cast<double>(x);
        if (v >= lo && v <= hi) kept.push_back(x);
    }
    return kept;
}

std::vector<std::uint64_t> apply_outlier_rule(std::span<const std::uint64_t> samples, OutlierRule rule) {
    if (rule == OutlierRule::None) return {samples.begin(), samples.end()};
    return remove_outliers_iqr(samples);
}

std::uint64_t synthetic_mem_delta(std::uint32_t n_qubits, std::uint64_t noise_seed) {
    return state_size_bytes(n_qubits) + (mix_seed(noise_seed, 0x3e3) % 4096);
}

std::uint64_t peak_rss_bytes() {
#if defined(__linux__)
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) != 0) throw ProbeUnavailable("getrusage failed");
    return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
#else
    throw ProbeUnavailable("peak RSS probe is only implemented on Linux");
#endif
}

std::uint64_t measure_mem_delta(std::uint32_t n_qubits, MemMode mode, std::uint64_t noise_seed,
                                const std::function<void()> &shot) {
    if (mode == MemMode::DeterministicSynthetic) {
        shot();
        return synthetic_mem_delta(n_qubits, noise_seed);
    }
    const std::uint64_t before = peak_rss_bytes();
    shot();
    const std::uint64_t after = peak_rss_bytes();
    return after > before ? after - before : 0;
}

std::string rfc3339_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ShotTrace collect(const Circuit &c, const CollectionConfig &cfg, std::uint64_t seed, std::string run_id) {
    return collect(c, cfg, seed, std::move(run_id), ShotRunner(&run_shot));
}

ShotTrace collect(const Circuit &c, const CollectionConfig &cfg, std::uint64_t seed, std::string run_id,
                  const ShotRunner &runner) {
    if (cfg.shots == 0) throw InvalidArgument("shots must be positive");
    if (cfg.shots <= cfg.warmup_shots) throw InvalidArgument("shots must exceed warmup_shots");
    if (cfg.outlier_rule == OutlierRule::Iqr1_5 && cfg.shots < 4) {
        throw TooFewSamples("iqr_1_5 outlier rule needs at least 4 shots");
    }
    if (c.n_qubits > cfg.sim.max_qubits) {
        throw CapacityError(c.name + ": " + std::to_string(c.n_qubits) + " qubits exceed the configured ceiling of " +
                            std::to_string(cfg.sim.max_qubits));
    }
    validate(c);

    ShotTrace t;
    t.circuit_name = c.name;
    t.n_qubits = c.n_qubits;
    t.total_gates = total_gates(c);
    t.source_hash = c.source_hash;
    t.config = cfg;
    t.seed = seed;
    if (run_id.empty()) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%012llx",
                      static_cast<unsigned long long>(mix_seed(seed, 0xc011) >> 16));
        run_id = buf;
    }
    t.run_id = std::move(run_id);

    MemMode mode = cfg.mem_mode;
    if (mode == MemMode::OsProbe) {
        try {
            (void)peak_rss_bytes();
        } catch (const ProbeUnavailable &) {
            mode = MemMode::DeterministicSynthetic;
        }
    }
    t.config.mem_mode = mode;

    t.shots_ns.reserve(cfg.shots);
    t.mem_deltas_bytes.reserve(cfg.shots);
    t.outcomes.reserve(cfg.shots);
    const std::uint32_t total = cfg.warmup_shots + cfg.shots;
    for (std::uint32_t i = 0; i < total; ++i) {
        const std::uint64_t shot_seed = mix_seed(seed, i);
        ShotResult r;
        const std::uint64_t mem =
            measure_mem_delta(c.n_qubits, mode, mix_seed(shot_seed, 0x3e3), [&] { r = runner(c, shot_seed, cfg.sim); });
        if (i < cfg.warmup_shots) continue;
        t.shots_ns.push_back(r.elapsed_ns);
        t.mem_deltas_bytes.push_back(mem);
        t.outcomes.push_back(std::move(r.bitstring));
    }
    t.kept_ns = apply_outlier_rule(t.shots_ns, cfg.outlier_rule);
    t.collected_at = rfc3339_now();
    return t;
}

}  // namespace qleak
