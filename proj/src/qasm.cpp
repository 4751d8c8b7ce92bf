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

#include "qleak/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "qleak/errors.hpp"

namespace qleak {

namespace {

struct GateInfo {
    GateKind kind;
    std::string_view name;
    std::size_t n_params;
    std::size_t n_qubits;
};

constexpr std::array<GateInfo, kNumGateKinds> kGateTable = {{
    {GateKind::H, "h", 0, 1},
    {GateKind::X, "x", 0, 1},
    {GateKind::Y, "y", 0, 1},
    {GateKind::Z, "z", 0, 1},
    {GateKind::S, "s", 0, 1},
    {GateKind::Sdg, "sdg", 0, 1},
    {GateKind::T, "t", 0, 1},
    {GateKind::Tdg, "tdg", 0, 1},
    {GateKind::Rx, "rx", 1, 1},
    {GateKind::Ry, "ry", 1, 1},
    {GateKind::Rz, "rz", 1, 1},
    {GateKind::U1, "u1", 1, 1},
    {GateKind::U2, "u2", 2, 1},
    {GateKind::U3, "u3", 3, 1},
    {GateKind::Cx, "cx", 0, 2},
    {GateKind::Cz, "cz", 0, 2},
    {GateKind::Swap, "swap", 0, 2},
    {GateKind::Ccx, "ccx", 0, 3},
    {GateKind::Measure, "measure", 0, 1},
    {GateKind::Barrier, "barrier", 0, 0},
}};

const GateInfo &info(GateKind kind) {
    return kGateTable[static_cast<std::size_t>(kind)];
}

enum class Tok { Ident, Number, String, Punct };

struct Token {
    Tok type;
    std::string text;
    int line;
};

struct Statement {
    std::vector<Token> tokens;
    int line;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Statement> split_statements(std::string_view src) {
    std::vector<Statement> out;
    Statement cur{{}, 1};
    int line = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (cur.tokens.empty()) cur.line = line;
        if (c == ';') {
            if (cur.tokens.empty()) throw SyntaxError(line, "empty statement");
            out.push_back(std::move(cur));
            cur = Statement{{}, line};
            ++i;
            continue;
        }
        if (c == '{') {
            // a braced body (gate definitions) closes its statement without ';'
            int depth = 0;
            std::size_t j = i;
            for (; j < src.size(); ++j) {
                if (src[j] == '\n') ++line;
                if (src[j] == '{') ++depth;
                if (src[j] == '}' && --depth == 0) break;
            }
            if (j >= src.size()) throw SyntaxError(cur.line, "unterminated '{'");
            cur.tokens.push_back({Tok::Punct, "{}", cur.line});
            out.push_back(std::move(cur));
            cur = Statement{{}, line};
            i = j + 1;
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            cur.tokens.push_back({Tok::Ident, std::string(src.substr(i, j - i)), line});
            i = j;
        } else if (digit(c) || (c == '.' && i + 1 < src.size() && digit(src[i + 1]))) {
            std::size_t j = i;
            while (j < src.size() && (digit(src[j]) || src[j] == '.')) ++j;
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && digit(src[k])) {
                    j = k;
                    while (j < src.size() && digit(src[j])) ++j;
                }
            }
            cur.tokens.push_back({Tok::Number, std::string(src.substr(i, j - i)), line});
            i = j;
        } else if (c == '"') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != '"') throw SyntaxError(line, "unterminated string");
            cur.tokens.push_back({Tok::String, std::string(src.substr(i + 1, j - i - 1)), line});
            i = j + 1;
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            cur.tokens.push_back({Tok::Punct, "->", line});
            i += 2;
        } else if (std::string_view("()[],*/-+{}=<>").find(c) != std::string_view::npos) {
            cur.tokens.push_back({Tok::Punct, std::string(1, c), line});
            ++i;
        } else {
            throw SyntaxError(line, std::string("unexpected character '") + c + "'");
        }
    }
    if (!cur.tokens.empty()) throw SyntaxError(cur.line, "missing ';' at end of statement");
    return out;
}

class StatementParser {
public:
    explicit StatementParser(const Statement &st) : st_(st) {}

    bool at_end() const { return pos_ >= st_.tokens.size(); }

    const Token *peek() const { return at_end() ? nullptr : &st_.tokens[pos_]; }

    bool peek_punct(std::string_view p) const {
        const Token *t = peek();
        return t != nullptr && t->type == Tok::Punct && t->text == p;
    }

    const Token &next(const char *what) {
        if (at_end()) fail(std::string("expected ") + what);
        return st_.tokens[pos_++];
    }

    void expect_punct(std::string_view p) {
        const Token &t = next(std::string(p).c_str());
        if (t.type != Tok::Punct || t.text != p) fail("expected '" + std::string(p) + "', got '" + t.text + "'");
    }

    std::string expect_ident() {
        const Token &t = next("identifier");
        if (t.type != Tok::Ident) fail("expected identifier, got '" + t.text + "'");
        return t.text;
    }

    std::uint64_t expect_uint() {
        const Token &t = next("integer");
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (t.type != Tok::Number || ec != std::errc() || p != t.text.data() + t.text.size()) {
            fail("expected non-negative integer, got '" + t.text + "'");
        }
        return v;
    }

    void expect_end() {
        if (!at_end()) fail("unexpected token '" + st_.tokens[pos_].text + "'");
    }

    // angle := ['-'] term (('*' | '/') term)*, term := number | pi
    double parse_angle() {
        bool negative = false;
        if (peek_punct("-")) {
            negative = true;
            ++pos_;
        }
        double value = parse_term();
        while (peek_punct("*") || peek_punct("/")) {
            bool mul = st_.tokens[pos_].text == "*";
            ++pos_;
            double rhs = parse_term();
            if (mul) {
                value *= rhs;
            } else {
                if (rhs == 0.0) fail("division by zero in angle");
                value /= rhs;
            }
        }
        return negative ? -value : value;
    }

    [[noreturn]] void fail(const std::string &msg) const {
        int line = at_end() ? st_.line : st_.tokens[pos_ == 0 ? 0 : pos_ - 1].line;
        throw SyntaxError(line, msg);
    }

    int line() const { return st_.line; }

private:
    double parse_term() {
        const Token &t = next("angle");
        if (t.type == Tok::Ident && t.text == "pi") return std::numbers::pi;
        if (t.type != Tok::Number) fail("unsupported angle expression at '" + t.text + "'");
        double v = 0.0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size()) fail("malformed number '" + t.text + "'");
        return v;
    }

    const Statement &st_;
    std::size_t pos_ = 0;
};

struct Register {
    std::uint32_t offset;
    std::uint32_t size;
};

// One operand: either a whole register or one indexed qubit.
struct Operand {
    std::uint32_t first;
    std::uint32_t size;
    bool whole;
};

class Builder {
public:
    Circuit circuit;

    void statement(const Statement &st) {
        StatementParser p(st);
        const Token &head = p.next("statement");
        if (head.type != Tok::Ident) p.fail("statement must start with a keyword, got '" + head.text + "'");
        const std::string &kw = head.text;

        if (kw == "OPENQASM") {
            if (seen_any_) p.fail("OPENQASM header must be the first statement");
            const Token &v = p.next("version");
            if (v.type != Tok::Number || (v.text != "2.0" && v.text != "2")) {
                throw UnsupportedGate("line " + std::to_string(v.line) + ": unsupported OpenQASM version " + v.text);
            }
            p.expect_end();
        } else if (kw == "include") {
            const Token &f = p.next("include file");
            if (f.type != Tok::String) p.fail("include expects a quoted file name");
            if (f.text != "qelib1.inc") {
                throw UnsupportedGate("line " + std::to_string(f.line) + ": unsupported include \"" + f.text + "\"");
            }
            p.expect_end();
        } else if (kw == "qreg") {
            declare_qreg(p);
        } else if (kw == "creg" || kw == "if" || kw == "gate" || kw == "opaque" || kw == "reset" ||
                   kw == "U" || kw == "CX") {
            throw UnsupportedGate("line " + std::to_string(st.line) + ": unsupported statement '" + kw + "'");
        } else if (auto kind = gate_from_name(kw)) {
            apply(*kind, p);
        } else {
            throw UnsupportedGate("line " + std::to_string(st.line) + ": unsupported gate '" + kw + "'");
        }
        seen_any_ = true;
    }

private:
    void declare_qreg(StatementParser &p) {
        std::string name = p.expect_ident();
        p.expect_punct("[");
        std::uint64_t size = p.expect_uint();
        p.expect_punct("]");
        p.expect_end();
        if (size == 0) p.fail("register '" + name + "' must have at least one qubit");
        if (registers_.count(name) != 0) p.fail("register '" + name + "' redeclared");
        if (circuit.n_qubits + size > 64) p.fail("register '" + name + "' exceeds 64 total qubits");
        registers_[name] = Register{circuit.n_qubits, static_cast<std::uint32_t>(size)};
        circuit.n_qubits += static_cast<std::uint32_t>(size);
    }

    Operand operand(StatementParser &p) {
        std::string name = p.expect_ident();
        auto it = registers_.find(name);
        if (it == registers_.end()) p.fail("undeclared register '" + name + "'");
        const Register &reg = it->second;
        if (!p.peek_punct("[")) return Operand{reg.offset, reg.size, true};
        p.expect_punct("[");
        std::uint64_t idx = p.expect_uint();
        p.expect_punct("]");
        if (idx >= reg.size) {
            throw IndexError("line " + std::to_string(p.line()) + ": qubit " + name + "[" + std::to_string(idx) +
                             "] out of range for register of size " + std::to_string(reg.size));
        }
        return Operand{reg.offset + static_cast<std::uint32_t>(idx), 1, false};
    }

    void apply(GateKind kind, StatementParser &p) {
        const GateInfo &gi = info(kind);
        std::vector<double> params;
        if (p.peek_punct("(")) {
            p.expect_punct("(");
            if (!p.peek_punct(")")) {
                params.push_back(p.parse_angle());
                while (p.peek_punct(",")) {
                    p.expect_punct(",");
                    params.push_back(p.parse_angle());
                }
            }
            p.expect_punct(")");
        }
        if (params.size() != gi.n_params) {
            p.fail(std::string(gi.name) + " takes " + std::to_string(gi.n_params) + " parameter(s), got " +
                   std::to_string(params.size()));
        }

        std::vector<Operand> ops{operand(p)};
        while (p.peek_punct(",")) {
            p.expect_punct(",");
            ops.push_back(operand(p));
        }
        if (p.peek_punct("->")) {
            throw UnsupportedGate("line " + std::to_string(p.line()) + ": classical registers are not supported");
        }
        p.expect_end();

        if (kind == GateKind::Barrier) {
            Gate g{kind, {}, {}};
            for (const Operand &op : ops) {
                for (std::uint32_t i = 0; i < op.size; ++i) g.qubits.push_back(op.first + i);
            }
            check_distinct(g, p);
            circuit.gates.push_back(std::move(g));
            return;
        }

        if (ops.size() != gi.n_qubits) {
            p.fail(std::string(gi.name) + " takes " + std::to_string(gi.n_qubits) + " qubit(s), got " +
                   std::to_string(ops.size()));
        }
        std::uint32_t width = 1;
        for (const Operand &op : ops) {
            if (!op.whole) continue;
            if (width != 1 && op.size != width) p.fail("broadcast registers differ in size");
            width = op.size;
        }
        for (std::uint32_t i = 0; i < width; ++i) {
            Gate g{kind, {}, params};
            for (const Operand &op : ops) g.qubits.push_back(op.whole ? op.first + i : op.first);
            check_distinct(g, p);
            circuit.gates.push_back(std::move(g));
        }
    }

    static void check_distinct(const Gate &g, StatementParser &p) {
        std::vector<std::uint32_t> sorted = g.qubits;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            p.fail("repeated qubit operand in " + std::string(gate_name(g.kind)));
        }
    }

    std::map<std::string, Register> registers_;
    bool seen_any_ = false;
};

std::string format_angle(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) {
    for (const GateInfo &gi : kGateTable) {
        if (gi.name == name) return gi.kind;
    }
    return std::nullopt;
}

std::size_t gate_param_count(GateKind kind) { return info(kind).n_params; }
std::size_t gate_qubit_count(GateKind kind) { return info(kind).n_qubits; }

bool counts_as_gate(GateKind kind) { return kind != GateKind::Measure && kind != GateKind::Barrier; }

bool same_structure(const Circuit &a, const Circuit &b) {
    return a.n_qubits == b.n_qubits && a.gates == b.gates;
}

Circuit parse_qasm(std::string_view source, std::string name) {
    Builder b;
    b.circuit.name = std::move(name);
    for (const Statement &st : split_statements(source)) b.statement(st);
    if (b.circuit.n_qubits == 0) throw SyntaxError(1, "program declares no qreg");
    b.circuit.source_hash = source_hash(source);
    return std::move(b.circuit);
}

Circuit load_qasm_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_qasm(ss.str(), std::filesystem::path(path).stem().string());
}

std::size_t total_gates(const Circuit &c) {
    return static_cast<std::size_t>(
        std::count_if(c.gates.begin(), c.gates.end(), [](const Gate &g) { return counts_as_gate(g.kind); }));
}

std::string emit_qasm(const Circuit &c) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(c.n_qubits) + "];\n";
    for (const Gate &g : c.gates) {
        out += gate_name(g.kind);
        if (!g.params.empty()) {
            out += '(';
            for (std::size_t i = 0; i < g.params.size(); ++i) {
                if (i) out += ',';
                out += format_angle(g.params[i]);
            }
            out += ')';
        }
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            out += i ? "," : " ";
            out += "q[" + std::to_string(g.qubits[i]) + "]";
        }
        out += ";\n";
    }
    return out;
}

std::string canonicalize_source(std::string_view source) {
    std::string stripped;
    stripped.reserve(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (source[i] == '/' && i + 1 < source.size() && source[i + 1] == '/') {
            while (i < source.size() && source[i] != '\n') ++i;
            stripped += ' ';
            continue;
        }
        stripped += source[i];
    }
    std::string out;
    bool pending_space = false;
    for (char c : stripped) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = true;
            continue;
        }
        if (c == ';') {
            out += ";\n";
            pending_space = false;
            continue;
        }
        if (pending_space && !out.empty() && out.back() != '\n') out += ' ';
        pending_space = false;
        out += c;
    }
    return out;
}

std::string source_hash(std::string_view source) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonicalize_source(source)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void validate(const Circuit &c) {
    if (c.n_qubits == 0) throw DimensionError("circuit has no qubits");
    for (const Gate &g : c.gates) {
        const GateInfo &gi = info(g.kind);
        if (g.params.size() != gi.n_params) {
            throw InvalidArgument(std::string(gi.name) + ": wrong parameter count");
        }
        if (gi.n_qubits != 0 ? g.qubits.size() != gi.n_qubits : g.qubits.empty()) {
            throw InvalidArgument(std::string(gi.name) + ": wrong qubit count");
        }
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            if (g.qubits[i] >= c.n_qubits) {
                throw DimensionError(std::string(gi.name) + ": qubit " + std::to_string(g.qubits[i]) +
                                     " out of range for " + std::to_string(c.n_qubits) + " qubits");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (g.qubits[i] == g.qubits[j]) throw InvalidArgument(std::string(gi.name) + ": repeated qubit");
            }
        }
    }
}

}  // namespace qleak
