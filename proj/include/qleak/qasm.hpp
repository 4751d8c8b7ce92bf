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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qleak {

enum class GateKind : std::uint8_t {
    H, X, Y, Z, S, Sdg, T, Tdg,
    Rx, Ry, Rz, U1, U2, U3,
    Cx, Cz, Swap, Ccx,
    Measure, Barrier,
};

inline constexpr std::size_t kNumGateKinds = 20;

inline constexpr std::array<GateKind, kNumGateKinds> kAllGateKinds = {
    GateKind::H,  GateKind::X,  GateKind::Y,   GateKind::Z,    GateKind::S,
    GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::Rx,   GateKind::Ry,
    GateKind::Rz, GateKind::U1, GateKind::U2,  GateKind::U3,   GateKind::Cx,
    GateKind::Cz, GateKind::Swap, GateKind::Ccx, GateKind::Measure, GateKind::Barrier,
};

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

/// Number of angle parameters the kind takes.
std::size_t gate_param_count(GateKind kind);

/// Number of qubit operands, or 0 for barrier (any positive count).
std::size_t gate_qubit_count(GateKind kind);

/// True for gates that contribute to total_gates (everything but measure and barrier).
bool counts_as_gate(GateKind kind);

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<std::uint32_t> qubits;
    std::vector<double> params;

    friend bool operator==(const Gate &, const Gate &) = default;
};

struct Circuit {
    std::string name;
    std::uint32_t n_qubits = 0;
    std::vector<Gate> gates;
    std::string source_hash;
};

/// Structural equality (ignores source_hash, which depends on formatting).
bool same_structure(const Circuit &a, const Circuit &b);

/// Parses an OpenQASM 2.0 program in the supported subset.
///
/// Register declarations are flattened into one index space in declaration
/// order. Register-wide operands (`h q;`) are broadcast. Throws SyntaxError,
/// UnsupportedGate, or IndexError; never skips a statement it cannot model.
Circuit parse_qasm(std::string_view source, std::string name = "circuit");

/// Reads and parses a `.qasm` file; the circuit name is the filename stem.
Circuit load_qasm_file(const std::string &path);

std::size_t total_gates(const Circuit &c);

/// Canonical OpenQASM text: one flat register `q`, one statement per line,
/// angles printed with 17 significant digits.
std::string emit_qasm(const Circuit &c);

/// Comments stripped, whitespace runs collapsed, one statement per line.
std::string canonicalize_source(std::string_view source);

/// 64-bit FNV-1a over the canonicalized source, as 16 lowercase hex digits.
std::string source_hash(std::string_view source);

/// Checks gate arity and qubit bounds against the circuit's register.
void validate(const Circuit &c);

}  // namespace qleak
