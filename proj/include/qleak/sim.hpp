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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qleak/qasm.hpp"

namespace qleak {

using Amplitude = std::complex<double>;

/// Dense n-qubit state. Qubit q is bit q of the amplitude index (qubit 0 is
/// the least significant bit).
class StateVector {
public:
    explicit StateVector(std::uint32_t n_qubits);

    std::uint32_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }

    const std::vector<Amplitude> &amplitudes() const noexcept { return amplitudes_; }
    std::vector<Amplitude> &amplitudes() noexcept { return amplitudes_; }

    double norm_squared() const;

private:
    std::uint32_t n_qubits_;
    std::vector<Amplitude> amplitudes_;
};

/// Applies the unitary of `g` in place. measure and barrier leave the state
/// untouched: measurement is a single terminal sample in run_shot.
void apply_gate(StateVector &state, const Gate &g);

struct SimConfig {
    std::uint32_t max_qubits = 24;
};

struct ShotResult {
    /// One character per qubit, qubit 0 rightmost.
    std::string bitstring;
    std::uint64_t elapsed_ns = 0;
};

/// Allocates |0...0>, applies every gate, samples one outcome. The timed
/// region covers allocation through sampling.
ShotResult run_shot(const Circuit &c, std::uint64_t seed, const SimConfig &cfg = {});

/// Bytes held by a 2^n amplitude vector of two doubles each.
std::uint64_t state_size_bytes(std::uint32_t n_qubits);

/// Inverse-CDF sample of a basis index from |amplitude|^2 given u in [0, 1).
std::uint64_t sample_index(const StateVector &state, double u);

/// Deterministic 64-bit mixer, used to derive per-shot and per-run seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Uniform double in [0, 1) from 53 high bits of a 64-bit draw.
double unit_double(std::uint64_t bits);

}  // namespace qleak
