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

// Writes a synthetic trace corpus from a seeded timing model, for end-to-end
// checks that must not depend on host timing.
//
// usage: qleak_synth_traces <out_dir> <n_circuits> <runs_per_circuit> <seed>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "qleak/io.hpp"
#include "qleak/sim.hpp"
#include "qleak/trace.hpp"

int main(int argc, char **argv) {
    if (argc != 5) {
        std::fprintf(stderr, "usage: %s <out_dir> <n_circuits> <runs_per_circuit> <seed>\n", argv[0]);
        return 1;
    }
    const std::filesystem::path out = argv[1];
    const unsigned long circuits = std::strtoul(argv[2], nullptr, 10);
    const unsigned long runs = std::strtoul(argv[3], nullptr, 10);
    std::mt19937_64 rng(std::strtoull(argv[4], nullptr, 10));
    std::filesystem::create_directories(out);

    for (unsigned long i = 0; i < circuits; ++i) {
        // a few circuits share labels so the distribution match has work to do
        const std::uint32_t n = 2 + static_cast<std::uint32_t>(i % 7 == 3 ? (i - 1) % 19 : rng() % 19);
        const std::uint64_t g = i % 7 == 3 ? 5 + (i - 1) * 3 : 5 + rng() % 195;
        const double base = 120.0 * std::pow(1.6, n) + 35.0 * static_cast<double>(g) * n;
        const double spread = (0.02 + 0.08 * std::uniform_real_distribution<double>(0, 1)(rng)) * base;
        char name[32];
        std::snprintf(name, sizeof name, "synth_%02lu", i);
        for (unsigned long r = 0; r < runs; ++r) {
            qleak::ShotTrace t;
            t.circuit_name = name;
            char run_id[32];
            std::snprintf(run_id, sizeof run_id, "r%02lu-c%03lu", r, i);
            t.run_id = run_id;
            t.n_qubits = n;
            t.total_gates = g;
            t.source_hash = "0000000000000000";
            t.config.shots = 60;
            t.config.warmup_shots = 0;
            t.seed = i * 100 + r;
            t.collected_at = "2026-01-01T00:00:00Z";
            std::normal_distribution<double> lat(base * (1.0 + 0.01 * static_cast<double>(r)), spread);
            for (int s = 0; s < 60; ++s) {
                double v = lat(rng);
                if (rng() % 40 == 0) v *= 4;  // scheduler spike
                t.shots_ns.push_back(static_cast<std::uint64_t>(std::max(1.0, v)));
                t.mem_deltas_bytes.push_back(qleak::synthetic_mem_delta(n, rng()));
                t.outcomes.push_back(std::string(n, '0'));
            }
            t.kept_ns = qleak::remove_outliers_iqr(t.shots_ns);
            qleak::io::write_trace((out / qleak::io::trace_filename(t)).string(), t);
        }
    }
    return 0;
}
