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

#include "qleak/workflow.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <tuple>

#include "qleak/errors.hpp"
#include "qleak/io.hpp"

namespace qleak::workflow {

namespace fs = std::filesystem;

namespace {

std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint32_t uniform_in(std::uint64_t bits, std::uint32_t lo, std::uint32_t hi) {
    return lo + static_cast<std::uint32_t>(bits % (static_cast<std::uint64_t>(hi - lo) + 1));
}

}  // namespace

std::vector<std::string> generate_circuits(const GenerateOptions &opt) {
    if (opt.qubits_lo == 0 || opt.qubits_lo > opt.qubits_hi) throw InvalidArgument("bad qubit range");
    if (opt.gates_lo > opt.gates_hi) throw InvalidArgument("bad gate range");
    if (opt.out_dir.empty()) throw InvalidArgument("output directory required");
    fs::create_directories(opt.out_dir);
    std::vector<std::string> paths;
    for (std::uint32_t i = 0; i < opt.count; ++i) {
        const std::uint64_t s = mix_seed(opt.seed, i);
        const std::uint32_t n = uniform_in(mix_seed(s, 1), opt.qubits_lo, opt.qubits_hi);
        const std::uint32_t g = uniform_in(mix_seed(s, 2), opt.gates_lo, opt.gates_hi);
        char name[64];
        std::snprintf(name, sizeof name, "rand_%03u_q%u_g%u", i, n, g);
        const Circuit c = gen_random_circuit(n, g, mix_seed(s, 3), name);
        const std::string path = (fs::path(opt.out_dir) / (c.name + ".qasm")).string();
        io::write_file(path, emit_qasm(c));
        paths.push_back(path);
    }
    return paths;
}

std::uint64_t run_seed(std::uint64_t seed, const std::string &circuit_name, std::uint32_t run_index) {
    return mix_seed(mix_seed(seed, fnv1a(circuit_name)), run_index);
}

std::string run_id_for(std::uint64_t seed, std::uint32_t run_index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "r%02u-%08llx", run_index, static_cast<unsigned long long>(seed >> 32));
    return buf;
}

std::vector<std::string> collect_directory(const CollectOptions &opt) {
    if (opt.runs_per_circuit == 0) throw InvalidArgument("runs per circuit must be positive");
    std::vector<Circuit> circuits;
    for (const std::string &path : io::list_qasm_files(opt.circuits_dir)) circuits.push_back(load_qasm_file(path));
    if (circuits.empty()) throw IoError("no .qasm files in " + opt.circuits_dir);
    fs::create_directories(opt.out_dir);

    std::vector<std::string> written;
    for (std::uint32_t r = 0; r < opt.runs_per_circuit; ++r) {
        for (const Circuit &c : circuits) {
            const std::uint64_t s = run_seed(opt.seed, c.name, r);
            const ShotTrace t = collect(c, opt.config, s, run_id_for(s, r));
            const std::string path = (fs::path(opt.out_dir) / io::trace_filename(t)).string();
            io::write_trace(path, t);
            written.push_back(path);
        }
    }
    return written;
}

std::vector<TimingProfile> summarize_directory(const std::string &trace_dir) {
    std::vector<TimingProfile> rows;
    for (const ShotTrace &t : io::read_trace_dir(trace_dir)) rows.push_back(summarize(t));
    std::sort(rows.begin(), rows.end(), [](const TimingProfile &a, const TimingProfile &b) {
        return std::tie(a.circuit_name, a.run_id) < std::tie(b.circuit_name, b.run_id);
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].run_id == rows[i - 1].run_id && rows[i].circuit_name == rows[i - 1].circuit_name) {
            throw InvalidArgument("duplicate run " + rows[i].circuit_name + "/" + rows[i].run_id);
        }
    }
    return rows;
}

std::size_t write_features(const std::string &trace_dir, const std::string &out_csv) {
    const std::vector<TimingProfile> rows = summarize_directory(trace_dir);
    io::write_profiles_csv(out_csv, rows);
    return rows.size();
}

ProfileDatabase load_database(const std::string &db_csv, const std::string &trace_dir) {
    ProfileDatabase db;
    db.profiles = io::read_profiles_csv(db_csv);
    std::map<std::string, std::string> circuit_of_run;
    for (const TimingProfile &p : db.profiles) {
        if (!circuit_of_run.emplace(p.run_id, p.circuit_name).second) {
            throw InvalidArgument(db_csv + ": run_id '" + p.run_id + "' appears in more than one row");
        }
    }
    for (ShotTrace &t : io::read_trace_dir(trace_dir)) {
        auto it = circuit_of_run.find(t.run_id);
        if (it != circuit_of_run.end() && it->second == t.circuit_name) db.traces.push_back(std::move(t));
    }
    return db;
}

std::string identify_to_json(const std::string &db_csv, const std::string &refs_dir, const std::string &probe_file,
                             const EvalConfig &cfg) {
    const ShotTrace probe_trace = io::read_trace(probe_file);
    const TimingProfile probe = summarize(probe_trace);
    const Identifier id(load_database(db_csv, refs_dir), cfg);
    return io::report_to_json(id.identify(probe, probe_trace), cfg);
}

EvaluateOutput evaluate_to_json(const std::string &db_csv, const std::string &trace_dir, const EvalConfig &cfg) {
    ProfileDatabase db = load_database(db_csv, trace_dir);
    std::map<std::string, const TimingProfile *> row_of_run;
    for (const TimingProfile &p : db.profiles) row_of_run[p.run_id] = &p;

    std::vector<std::pair<TimingProfile, ShotTrace>> probes;
    for (const ShotTrace &t : db.traces) probes.emplace_back(*row_of_run.at(t.run_id), t);
    std::sort(probes.begin(), probes.end(), [](const auto &a, const auto &b) {
        return std::tie(a.first.circuit_name, a.first.run_id) < std::tie(b.first.circuit_name, b.first.run_id);
    });
    if (probes.empty()) throw EmptyCorpus("no trace in " + trace_dir + " matches a row of " + db_csv);

    const EvaluationResult result = evaluate_corpus(db, probes, cfg);
    return {io::evaluation_to_json(result, cfg), io::strata_table_csv(result.summary)};
}

}  // namespace qleak::workflow
