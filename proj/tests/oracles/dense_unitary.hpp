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

// Test-only oracle: builds the full 2^n x 2^n unitary of a circuit from
// Kronecker products of per-qubit factors and multiplies it onto |0...0>.
// Gate matrices are derived here from Pauli operators and projectors, not
// taken from the simulator.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qleak/qasm.hpp"

namespace qleak::oracle {

using cd = std::complex<double>;

struct Dense {
    std::size_t dim = 0;
    std::vector<cd> a;  // row-major

    explicit Dense(std::size_t d) : dim(d), a(d * d) {}
    cd &at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    cd at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    static Dense identity(std::size_t d) {
        Dense m(d);
        for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline Dense operator*(const Dense &x, const Dense &y) {
    Dense out(x.dim);
    for (std::size_t i = 0; i < x.dim; ++i)
        for (std::size_t k = 0; k < x.dim; ++k) {
            const cd xik = x.at(i, k);
            if (xik == cd(0)) continue;
            for (std::size_t j = 0; j < x.dim; ++j) out.at(i, j) += xik * y.at(k, j);
        }
    return out;
}

inline Dense operator+(const Dense &x, const Dense &y) {
    Dense out(x.dim);
    for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] + y.a[i];
    return out;
}

inline Dense scale(const Dense &x, cd s) {
    Dense out(x.dim);
    for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] * s;
    return out;
}

inline Dense kron(const Dense &x, const Dense &y) {
    Dense out(x.dim * y.dim);
    for (std::size_t i = 0; i < x.dim; ++i)
        for (std::size_t j = 0; j < x.dim; ++j)
            for (std::size_t k = 0; k < y.dim; ++k)
                for (std::size_t l = 0; l < y.dim; ++l) out.at(i * y.dim + k, j * y.dim + l) = x.at(i, j) * y.at(k, l);
    return out;
}

inline Dense m2(cd a, cd b, cd c, cd d) {
    Dense m(2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

inline Dense I2() { return Dense::identity(2); }
inline Dense PX() { return m2(0, 1, 1, 0); }
inline Dense PY() { return m2(0, cd(0, -1), cd(0, 1), 0); }
inline Dense PZ() { return m2(1, 0, 0, -1); }
inline Dense P0() { return m2(1, 0, 0, 0); }
inline Dense P1() { return m2(0, 0, 0, 1); }

// exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P
inline Dense pauli_rotation(const Dense &p, double theta) {
    return scale(I2(), std::cos(theta / 2)) + scale(p, cd(0, -std::sin(theta / 2)));
}

inline Dense phase(double lambda) { return m2(1, 0, 0, std::exp(cd(0, lambda))); }

// u3 = e^{i(phi+lambda)/2} Rz(phi) Ry(theta) Rz(lambda)
inline Dense u3(double theta, double phi, double lambda) {
    Dense m = pauli_rotation(PZ(), phi) * pauli_rotation(PY(), theta) * pauli_rotation(PZ(), lambda);
    return scale(m, std::exp(cd(0, (phi + lambda) / 2)));
}

inline Dense single_factor(const Gate &g) {
    using std::numbers::pi;
    switch (g.kind) {
        case GateKind::H: return scale(PX() + PZ(), 1.0 / std::sqrt(2.0));
        case GateKind::X: return PX();
        case GateKind::Y: return PY();
        case GateKind::Z: return PZ();
        case GateKind::S: return phase(pi / 2);
        case GateKind::Sdg: return phase(-pi / 2);
        case GateKind::T: return phase(pi / 4);
        case GateKind::Tdg: return phase(-pi / 4);
        case GateKind::Rx: return pauli_rotation(PX(), g.params[0]);
        case GateKind::Ry: return pauli_rotation(PY(), g.params[0]);
        case GateKind::Rz: return pauli_rotation(PZ(), g.params[0]);
        case GateKind::U1: return phase(g.params[0]);
        case GateKind::U2: return u3(pi / 2, g.params[0], g.params[1]);
        case GateKind::U3: return u3(g.params[0], g.params[1], g.params[2]);
        default: return I2();
    }
}

// Tensor product of per-qubit factors; qubit 0 is the least significant index bit.
inline Dense embed(std::uint32_t n, const std::vector<std::pair<std::uint32_t, Dense>> &factors) {
    Dense out = Dense::identity(1);
    for (std::uint32_t q = n; q-- > 0;) {
        Dense f = I2();
        for (const auto &[qq, m] : factors)
            if (qq == q) f = m;
        out = kron(out, f);
    }
    return out;
}

inline Dense gate_unitary(std::uint32_t n, const Gate &g) {
    const auto &q = g.qubits;
    switch (g.kind) {
        case GateKind::Measure:
        case GateKind::Barrier:
            return Dense::identity(std::size_t{1} << n);
        case GateKind::Cx:
            return embed(n, {{q[0], P0()}}) + embed(n, {{q[0], P1()}, {q[1], PX()}});
        case GateKind::Cz:
            return embed(n, {{q[0], P0()}}) + embed(n, {{q[0], P1()}, {q[1], PZ()}});
        case GateKind::Swap:
            return scale(embed(n, {}) + embed(n, {{q[0], PX()}, {q[1], PX()}}) + embed(n, {{q[0], PY()}, {q[1], PY()}}) +
                             embed(n, {{q[0], PZ()}, {q[1], PZ()}}),
                         0.5);
        case GateKind::Ccx: {
            const Dense both = embed(n, {{q[0], P1()}, {q[1], P1()}});
            return embed(n, {}) + scale(both, -1.0) + embed(n, {{q[0], P1()}, {q[1], P1()}, {q[2], PX()}});
        }
        default:
            return embed(n, {{q[0], single_factor(g)}});
    }
}

/// Final amplitudes of the circuit applied to |0...0>.
inline std::vector<cd> final_state(const Circuit &c) {
    const std::size_t dim = std::size_t{1} << c.n_qubits;
    Dense total = Dense::identity(dim);
    for (const Gate &g : c.gates) total = gate_unitary(c.n_qubits, g) * total;
    std::vector<cd> psi(dim);
    for (std::size_t i = 0; i < dim; ++i) psi[i] = total.at(i, 0);
    return psi;
}

}  // namespace qleak::oracle
