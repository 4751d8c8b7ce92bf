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

#include "qleak/sim.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <utility>

#include "qleak/errors.hpp"

namespace qleak {

namespace {

using Mat2 = std::array<Amplitude, 4>;  // row-major {m00, m01, m10, m11}

Mat2 u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {Amplitude(c, 0), -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
}

Mat2 single_qubit_matrix(const Gate &g) {
    using std::numbers::pi;
    const double r = std::numbers::sqrt2 / 2;
    const Amplitude i(0, 1);
    switch (g.kind) {
        case GateKind::H: return {Amplitude(r), Amplitude(r), Amplitude(r), Amplitude(-r)};
        case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y: return {0.0, -i, i, 0.0};
        case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
        case GateKind::S: return {1.0, 0.0, 0.0, i};
        case GateKind::Sdg: return {1.0, 0.0, 0.0, -i};
        case GateKind::T: return {1.0, 0.0, 0.0, std::polar(1.0, pi / 4)};
        case GateKind::Tdg: return {1.0, 0.0, 0.0, std::polar(1.0, -pi / 4)};
        case GateKind::Rx: {
            const double c = std::cos(g.params[0] / 2), s = std::sin(g.params[0] / 2);
            return {Amplitude(c), Amplitude(0, -s), Amplitude(0, -s), Amplitude(c)};
        }
        case GateKind::Ry: {
            const double c = std::cos(g.params[0] / 2), s = std::sin(g.params[0] / 2);
            return {Amplitude(c), Amplitude(-s), Amplitude(s), Amplitude(c)};
        }
        case GateKind::Rz:
            return {std::polar(1.0, -g.params[0] / 2), 0.0, 0.0, std::polar(1.0, g.params[0] / 2)};
        case GateKind::U1: return {1.0, 0.0, 0.0, std::polar(1.0, g.params[0])};
        case GateKind::U2: return u3_matrix(pi / 2, g.params[0], g.params[1]);
        case GateKind::U3: return u3_matrix(g.params[0], g.params[1], g.params[2]);
        default: break;
    }
    throw InvalidArgument("not a single-qubit unitary: " + std::string(gate_name(g.kind)));
}

void apply_single(std::vector<Amplitude> &amp, std::uint32_t q, const Mat2 &m) {
    const std::size_t n = amp.size();
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Amplitude a0 = amp[i], a1 = amp[i + stride];
            amp[i] = m[0] * a0 + m[1] * a1;
            amp[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

// Swaps amplitude pairs that differ only in `flip` whenever all `require` bits are set.
void swap_where(std::vector<Amplitude> &amp, std::size_t require, std::size_t flip) {
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if ((i & require) == require && (i & flip) == 0) std::swap(amp[i], amp[i | flip]);
    }
}

}  // namespace

StateVector::StateVector(std::uint32_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0) throw DimensionError("state vector needs at least one qubit");
    if (n_qubits >= 8 * sizeof(std::size_t) - 5) throw CapacityError("state vector too large");
    amplitudes_.assign(std::size_t{1} << n_qubits, Amplitude(0.0, 0.0));
    amplitudes_[0] = 1.0;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const Amplitude &a : amplitudes_) total += std::norm(a);
    return total;
}

void apply_gate(StateVector &state, const Gate &g) {
    for (std::uint32_t q : g.qubits) {
        if (q >= state.n_qubits()) {
            throw DimensionError(std::string(gate_name(g.kind)) + ": qubit " + std::to_string(q) +
                                 " out of range for " + std::to_string(state.n_qubits()) + "-qubit state");
        }
    }
    if (g.qubits.size() != gate_qubit_count(g.kind) && g.kind != GateKind::Barrier) {
        throw DimensionError(std::string(gate_name(g.kind)) + ": wrong operand count");
    }
    auto &amp = state.amplitudes();
    auto bit = [](std::uint32_t q) { return std::size_t{1} << q; };
    switch (g.kind) {
        case GateKind::Measure:
        case GateKind::Barrier:
            return;
        case GateKind::Cx:
            swap_where(amp, bit(g.qubits[0]), bit(g.qubits[1]));
            return;
        case GateKind::Ccx:
            swap_where(amp, bit(g.qubits[0]) | bit(g.qubits[1]), bit(g.qubits[2]));
            return;
        case GateKind::Swap: {
            const std::size_t a = bit(g.qubits[0]), b = bit(g.qubits[1]);
            for (std::size_t i = 0; i < amp.size(); ++i) {
                if ((i & a) != 0 && (i & b) == 0) std::swap(amp[i], amp[(i & ~a) | b]);
            }
            return;
        }
        case GateKind::Cz: {
            const std::size_t both = bit(g.qubits[0]) | bit(g.qubits[1]);
            for (std::size_t i = 0; i < amp.size(); ++i) {
                if ((i & both) == both) amp[i] = -amp[i];
            }
            return;
        }
        default:
            apply_single(amp, g.qubits[0], single_qubit_matrix(g));
    }
}

std::uint64_t sample_index(const StateVector &state, double u) {
    const auto &amp = state.amplitudes();
    const double target = u * state.norm_squared();
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        const double p = std::norm(amp[i]);
        if (p == 0.0) continue;
        acc += p;
        last_nonzero = i;
        if (target < acc) return i;
    }
    return last_nonzero;
}

ShotResult run_shot(const Circuit &c, std::uint64_t seed, const SimConfig &cfg) {
    if (c.n_qubits > cfg.max_qubits) {
        throw CapacityError(c.name + ": " + std::to_string(c.n_qubits) + " qubits exceed the configured ceiling of " +
                            std::to_string(cfg.max_qubits));
    }
    const double u = unit_double(mix_seed(seed, 0x5107));

    const auto start = std::chrono::steady_clock::now();
    StateVector state(c.n_qubits);
    for (const Gate &g : c.gates) apply_gate(state, g);
    const std::uint64_t outcome = sample_index(state, u);
    const auto stop = std::chrono::steady_clock::now();

    ShotResult r;
    r.bitstring.resize(c.n_qubits);
    for (std::uint32_t q = 0; q < c.n_qubits; ++q) {
        r.bitstring[c.n_qubits - 1 - q] = ((outcome >> q) & 1u) ? '1' : '0';
    }
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    r.elapsed_ns = ns > 0 ? static_cast<std::uint64_t>(ns) : 1;
    return r;
}

std::uint64_t state_size_bytes(std::uint32_t n_qubits) {
    return std::uint64_t{16} << n_qubits;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over a combined word
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace qleak
