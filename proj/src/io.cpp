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

#include "qleak/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qleak/errors.hpp"

namespace qleak::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_csv_field(const std::string &s) {
    if (s.empty() || s.find_first_of(",\"\r\n") != std::string::npos) {
        throw InvalidArgument("identifier '" + s + "' cannot be written to CSV");
    }
}

template <typename T>
T require(const json &j, const char *key) {
    if (!j.contains(key)) throw IoError(std::string("trace JSON lacks field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw IoError(std::string("trace JSON field '") + key + "': " + e.what());
    }
}

std::vector<std::string> list_with_suffix(const std::string &dir, std::string_view suffix) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir);
    std::vector<std::string> out;
    for (const auto &entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() > suffix.size() && name.ends_with(suffix)) {
            out.push_back(entry.path().string());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

json range_json(const LabelRange &r) {
    return json{{"label_kind", std::string(label_kind_name(r.label_kind))},
                {"lo", r.lo},
                {"hi", r.hi},
                {"neighbor_ids", r.neighbor_ids},
                {"neighbor_distances", r.neighbor_distances}};
}

json report_json(const IdentificationReport &r) {
    json ranking = json::array();
    for (const auto &[name, d] : r.ranking.entries) ranking.push_back(json{{"circuit_name", name}, {"distance_ns", d}});
    return json{{"probe", json{{"circuit_name", r.probe_circuit}, {"run_id", r.probe_run_id}}},
                {"true_labels", json{{"n_qubits", r.true_labels.n_qubits}, {"total_gates", r.true_labels.total_gates}}},
                {"stratum", r.stratum},
                {"qubit_range", range_json(r.qubit_range)},
                {"gate_range", range_json(r.gate_range)},
                {"qubit_covered", r.qubit_covered},
                {"gate_covered", r.gate_covered},
                {"candidate_count", r.candidate_count},
                {"candidates", r.candidates},
                {"ranking", ranking},
                {"predicted_circuit", r.predicted_circuit},
                {"top1_correct", r.top1_correct},
                {"failure_mode", std::string(failure_mode_name(r.failure_mode))},
                {"knn_point_qubits", r.knn_point_qubits}};
}

json metrics_json(const MetricsBlock &m) {
    return json{{"n_probes", m.n_probes},
                {"range_coverage_qubits", m.range_coverage_qubits},
                {"range_coverage_gates", m.range_coverage_gates},
                {"mean_range_width_qubits", m.mean_range_width_qubits},
                {"mean_range_width_gates", m.mean_range_width_gates},
                {"mean_candidate_count", m.mean_candidate_count},
                {"top1_accuracy", m.top1_accuracy},
                {"knn_point_accuracy_qubits", m.knn_point_accuracy_qubits},
                {"knn_point_mae_qubits", m.knn_point_mae_qubits},
                {"failure_modes", m.failure_modes}};
}

json config_json(const EvalConfig &cfg) {
    json strata = json::array();
    for (const Stratum &s : cfg.strata) strata.push_back(json{{"name", s.name}, {"lo", s.lo}, {"hi", s.hi}});
    return json{{"k", cfg.k},
                {"strata", strata},
                {"normalization",
                 cfg.normalization == NormalizationMode::StoredParameters ? "stored_parameters" : "refit_with_probe"}};
}

}  // namespace

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, std::string_view contents) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("write failed: " + path);
}

std::string trace_filename(const ShotTrace &t) { return t.circuit_name + "." + t.run_id + ".trace.json"; }

std::string trace_to_json(const ShotTrace &t) {
    json j{{"circuit_name", t.circuit_name},
           {"run_id", t.run_id},
           {"n_qubits", t.n_qubits},
           {"total_gates", t.total_gates},
           {"source_hash", t.source_hash},
           {"seed", t.seed},
           {"config",
            json{{"shots", t.config.shots},
                 {"warmup_shots", t.config.warmup_shots},
                 {"outlier_rule", std::string(outlier_rule_name(t.config.outlier_rule))},
                 {"mem_mode", std::string(mem_mode_name(t.config.mem_mode))},
                 {"max_qubits", t.config.sim.max_qubits}}},
           {"shots_ns", t.shots_ns},
           {"kept_ns", t.kept_ns},
           {"mem_deltas_bytes", t.mem_deltas_bytes},
           {"outcomes", t.outcomes},
           {"collected_at", t.collected_at}};
    return j.dump(2) + "\n";
}

ShotTrace trace_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw IoError(std::string("malformed trace JSON: ") + e.what());
    }
    if (!j.is_object()) throw IoError("trace JSON must be an object");
    ShotTrace t;
    t.circuit_name = require<std::string>(j, "circuit_name");
    t.run_id = require<std::string>(j, "run_id");
    t.n_qubits = require<std::uint32_t>(j, "n_qubits");
    t.total_gates = require<std::uint64_t>(j, "total_gates");
    t.source_hash = j.value("source_hash", std::string{});
    t.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("config")) {
        const json &c = j.at("config");
        t.config.shots = require<std::uint32_t>(c, "shots");
        t.config.warmup_shots = require<std::uint32_t>(c, "warmup_shots");
        t.config.outlier_rule = parse_outlier_rule(require<std::string>(c, "outlier_rule"));
        t.config.mem_mode = parse_mem_mode(require<std::string>(c, "mem_mode"));
        t.config.sim.max_qubits = c.value("max_qubits", 24u);
    }
    t.shots_ns = require<std::vector<std::uint64_t>>(j, "shots_ns");
    t.kept_ns = require<std::vector<std::uint64_t>>(j, "kept_ns");
    t.mem_deltas_bytes = require<std::vector<std::uint64_t>>(j, "mem_deltas_bytes");
    t.outcomes = j.value("outcomes", std::vector<std::string>{});
    t.collected_at = j.value("collected_at", std::string{});
    for (std::uint64_t x : t.shots_ns) {
        if (x == 0) throw IoError(t.circuit_name + "/" + t.run_id + ": zero latency in shots_ns");
    }
    // kept_ns must be a subsequence of shots_ns
    std::size_t pos = 0;
    for (std::uint64_t x : t.kept_ns) {
        while (pos < t.shots_ns.size() && t.shots_ns[pos] != x) ++pos;
        if (pos == t.shots_ns.size()) throw IoError(t.circuit_name + "/" + t.run_id + ": kept_ns is not a subsequence of shots_ns");
        ++pos;
    }
    return t;
}

void write_trace(const std::string &path, const ShotTrace &t) { write_file(path, trace_to_json(t)); }

ShotTrace read_trace(const std::string &path) {
    try {
        return trace_from_json(read_file(path));
    } catch (const IoError &e) {
        throw IoError(path + ": " + e.what());
    }
}

std::vector<std::string> list_trace_files(const std::string &dir) { return list_with_suffix(dir, ".trace.json"); }

std::vector<ShotTrace> read_trace_dir(const std::string &dir) {
    std::vector<ShotTrace> out;
    for (const std::string &path : list_trace_files(dir)) out.push_back(read_trace(path));
    return out;
}

std::vector<std::string> list_qasm_files(const std::string &dir) { return list_with_suffix(dir, ".qasm"); }

std::string profiles_to_csv(const std::vector<TimingProfile> &profiles) {
    std::string out(kSummaryHeader);
    out += '\n';
    for (const TimingProfile &p : profiles) {
        check_csv_field(p.circuit_name);
        check_csv_field(p.run_id);
        out += p.circuit_name + ',' + p.run_id + ',' + std::to_string(p.labels.n_qubits) + ',' +
               std::to_string(p.labels.total_gates);
        for (double v : p.features()) out += ',' + format_real(v);
        out += '\n';
    }
    return out;
}

std::vector<TimingProfile> profiles_from_csv(std::string_view text) {
    std::vector<TimingProfile> out;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line_no == 1) {
            if (line != kSummaryHeader) throw IoError("summary CSV header mismatch");
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string_view> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (cells.size() != 4 + kNumFeatures) {
            throw IoError("summary CSV line " + std::to_string(line_no) + ": expected 12 fields, got " +
                          std::to_string(cells.size()));
        }
        auto number = [&](std::string_view cell, auto &dst) {
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), dst);
            if (ec != std::errc() || p != cell.data() + cell.size()) {
                throw IoError("summary CSV line " + std::to_string(line_no) + ": bad number '" + std::string(cell) + "'");
            }
        };
        TimingProfile prof;
        prof.circuit_name = std::string(cells[0]);
        prof.run_id = std::string(cells[1]);
        number(cells[2], prof.labels.n_qubits);
        number(cells[3], prof.labels.total_gates);
        number(cells[4], prof.avg_shot_time_ns);
        number(cells[5], prof.median_shot_time_ns);
        number(cells[6], prof.min_shot_time_ns);
        number(cells[7], prof.max_shot_time_ns);
        number(cells[8], prof.std_shot_time_ns);
        number(cells[9], prof.timing_variance);
        number(cells[10], prof.avg_memory_delta_bytes);
        number(cells[11], prof.max_memory_delta_bytes);
        out.push_back(std::move(prof));
    }
    if (line_no == 0) throw IoError("summary CSV is empty");
    return out;
}

void write_profiles_csv(const std::string &path, const std::vector<TimingProfile> &profiles) {
    write_file(path, profiles_to_csv(profiles));
}

std::vector<TimingProfile> read_profiles_csv(const std::string &path) {
    try {
        return profiles_from_csv(read_file(path));
    } catch (const IoError &e) {
        throw IoError(path + ": " + e.what());
    }
}

std::string report_to_json(const IdentificationReport &r, const EvalConfig &cfg) {
    json j = report_json(r);
    j["config"] = config_json(cfg);
    return j.dump(2) + "\n";
}

std::string evaluation_to_json(const EvaluationResult &r, const EvalConfig &cfg) {
    json reports = json::array();
    for (const IdentificationReport &rep : r.reports) reports.push_back(report_json(rep));
    json strata = json::object();
    for (const auto &[name, block] : r.summary.strata) strata[name] = metrics_json(block);
    json j{{"config", config_json(cfg)},
           {"overall", metrics_json(r.summary.overall)},
           {"strata", strata},
           {"reports", reports}};
    return j.dump(2) + "\n";
}

std::string strata_table_csv(const MetricsSummary &s) {
    std::string out =
        "stratum,n_probes,range_coverage_qubits,range_coverage_gates,mean_range_width_qubits,"
        "mean_range_width_gates,mean_candidate_count,top1_accuracy\n";
    auto row = [&](const std::string &name, const MetricsBlock &m) {
        out += name + ',' + std::to_string(m.n_probes) + ',' + format_real(m.range_coverage_qubits) + ',' +
               format_real(m.range_coverage_gates) + ',' + format_real(m.mean_range_width_qubits) + ',' +
               format_real(m.mean_range_width_gates) + ',' + format_real(m.mean_candidate_count) + ',' +
               format_real(m.top1_accuracy) + '\n';
    };
    for (const auto &[name, m] : s.strata) row(name, m);
    row("overall", s.overall);
    return out;
}

}  // namespace qleak::io
