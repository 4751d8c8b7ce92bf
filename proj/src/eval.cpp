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

#include "qleak/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "qleak/errors.hpp"

namespace qleak {

std::vector<Stratum> default_strata() { return {{"small", 2, 10}, {"medium", 11, 27}}; }

std::vector<Stratum> parse_strata(std::string_view spec) {
    std::vector<Stratum> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', pos), spec.size());
        const std::string_view item = spec.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        const std::size_t colon = item.find(':');
        if (eq == std::string_view::npos || colon == std::string_view::npos || colon < eq || eq == 0) {
            throw InvalidArgument("malformed stratum '" + std::string(item) + "', expected name=lo:hi");
        }
        Stratum s;
        s.name = std::string(item.substr(0, eq));
        try {
            std::size_t used = 0;
            const std::string lo(item.substr(eq + 1, colon - eq - 1));
            const std::string hi(item.substr(colon + 1));
            s.lo = std::stoll(lo, &used);
            if (used != lo.size()) throw std::invalid_argument(lo);
            s.hi = std::stoll(hi, &used);
            if (used != hi.size()) throw std::invalid_argument(hi);
        } catch (const std::logic_error &) {
            throw InvalidArgument("malformed stratum bounds in '" + std::string(item) + "'");
        }
        if (s.lo > s.hi) throw InvalidArgument("stratum '" + s.name + "' has lo > hi");
        for (const Stratum &prev : out) {
            if (prev.name == s.name) throw InvalidArgument("duplicate stratum '" + s.name + "'");
            if (s.lo <= prev.hi && prev.lo <= s.hi) {
                throw InvalidArgument("strata '" + prev.name + "' and '" + s.name + "' overlap");
            }
        }
        out.push_back(std::move(s));
        pos = comma + 1;
    }
    return out;
}

std::string stratify(std::int64_t n_qubits, const std::vector<Stratum> &bounds) {
    for (const Stratum &s : bounds) {
        if (s.lo <= n_qubits && n_qubits <= s.hi) return s.name;
    }
    throw UncoveredLabel(std::to_string(n_qubits) + " qubits fall outside every configured stratum");
}

std::string_view failure_mode_name(FailureMode mode) {
    switch (mode) {
        case FailureMode::None: return "none";
        case FailureMode::QubitRangeMiss: return "qubit_range_miss";
        case FailureMode::GateRangeMiss: return "gate_range_miss";
        case FailureMode::EmptyCandidates: return "empty_candidates";
        case FailureMode::WassersteinMiss: return "wasserstein_miss";
    }
    return "none";
}

Identifier::Identifier(ProfileDatabase db, EvalConfig cfg) : db_(std::move(db)), cfg_(std::move(cfg)) {
    if (cfg_.k == 0) throw InvalidArgument("k must be positive");
    norm_ = fit_normalizer(db_.profiles);
    (void)circuit_labels(norm_);
    std::set<std::string> runs;
    for (const TimingProfile &p : db_.profiles) {
        if (!runs.insert(p.run_id).second) throw InvalidArgument("duplicate run_id '" + p.run_id + "' in database");
    }
    for (std::size_t i = 0; i < db_.traces.size(); ++i) {
        if (!trace_by_run_.emplace(db_.traces[i].run_id, i).second) {
            throw InvalidArgument("duplicate run_id '" + db_.traces[i].run_id + "' among reference traces");
        }
    }
}

IdentificationReport Identifier::identify(const TimingProfile &probe, const ShotTrace &probe_trace) const {
    const std::set<std::string> exclude{probe.run_id};

    FeatureVector probe_z;
    if (cfg_.normalization == NormalizationMode::StoredParameters) {
        probe_z = transform(probe, norm_);
    } else {
        std::vector<TimingProfile> corpus;
        for (const TimingProfile &p : db_.profiles) {
            if (p.run_id != probe.run_id) corpus.push_back(p);
        }
        probe_z = transform(probe, corpus, norm_, cfg_.normalization);
    }

    IdentificationReport rep;
    rep.probe_circuit = probe.circuit_name;
    rep.probe_run_id = probe.run_id;
    rep.true_labels = probe.labels;
    try {
        rep.stratum = stratify(probe.labels.n_qubits, cfg_.strata);
    } catch (const UncoveredLabel &) {
        rep.stratum.clear();
    }
    rep.qubit_range = knn_range(probe_z, norm_, cfg_.k, LabelKind::Qubits, exclude);
    rep.gate_range = knn_range(probe_z, norm_, cfg_.k, LabelKind::Gates, exclude);
    rep.knn_point_qubits = knn_point_estimate(probe_z, norm_, cfg_.k, LabelKind::Qubits, exclude);
    rep.qubit_covered = rep.qubit_range.contains(label_of(probe.labels, LabelKind::Qubits));
    rep.gate_covered = rep.gate_range.contains(label_of(probe.labels, LabelKind::Gates));

    std::map<std::string, CircuitLabels> labels;
    for (std::size_t r = 0; r < norm_.rows(); ++r) {
        if (exclude.count(norm_.run_ids[r]) == 0) labels.emplace(norm_.circuit_names[r], norm_.labels[r]);
    }
    const CandidateSet cands = intersect_filter(labels, rep.qubit_range, rep.gate_range);
    rep.candidates.assign(cands.members.begin(), cands.members.end());
    rep.candidate_count = cands.members.size();

    std::map<std::string, std::vector<double>> pooled;
    for (std::size_t r = 0; r < norm_.rows(); ++r) {
        if (exclude.count(norm_.run_ids[r]) != 0 || cands.members.count(norm_.circuit_names[r]) == 0) continue;
        auto it = trace_by_run_.find(norm_.run_ids[r]);
        if (it == trace_by_run_.end()) continue;
        const ShotTrace &t = db_.traces[it->second];
        auto &dst = pooled[norm_.circuit_names[r]];
        dst.insert(dst.end(), t.kept_ns.begin(), t.kept_ns.end());
    }
    std::map<std::string, EmpiricalDistribution> refs;
    for (auto &[name, samples] : pooled) {
        if (!samples.empty()) refs.emplace(name, EmpiricalDistribution(std::move(samples), name));
    }
    const EmpiricalDistribution probe_dist(probe_trace.kept_ns, probe.circuit_name + "/" + probe.run_id);
    rep.ranking = rank_candidates(probe_dist, refs, cands);
    if (!rep.ranking.empty()) rep.predicted_circuit = rep.ranking.top1();
    rep.top1_correct = !rep.ranking.empty() && rep.ranking.top1() == probe.circuit_name;

    if (!rep.qubit_covered) {
        rep.failure_mode = FailureMode::QubitRangeMiss;
    } else if (!rep.gate_covered) {
        rep.failure_mode = FailureMode::GateRangeMiss;
    } else if (cands.members.empty()) {
        rep.failure_mode = FailureMode::EmptyCandidates;
    } else if (!rep.top1_correct) {
        rep.failure_mode = FailureMode::WassersteinMiss;
    }
    return rep;
}

MetricsBlock aggregate(const std::vector<const IdentificationReport *> &reports) {
    MetricsBlock m;
    m.n_probes = reports.size();
    for (FailureMode f : {FailureMode::None, FailureMode::QubitRangeMiss, FailureMode::GateRangeMiss,
                          FailureMode::EmptyCandidates, FailureMode::WassersteinMiss}) {
        m.failure_modes[std::string(failure_mode_name(f))] = 0;
    }
    if (reports.empty()) return m;
    for (const IdentificationReport *r : reports) {
        m.range_coverage_qubits += r->qubit_covered ? 1.0 : 0.0;
        m.range_coverage_gates += r->gate_covered ? 1.0 : 0.0;
        m.mean_range_width_qubits += static_cast<double>(r->qubit_range.width());
        m.mean_range_width_gates += static_cast<double>(r->gate_range.width());
        m.mean_candidate_count += static_cast<double>(r->candidate_count);
        m.top1_accuracy += r->top1_correct ? 1.0 : 0.0;
        const std::int64_t err = r->knn_point_qubits - static_cast<std::int64_t>(r->true_labels.n_qubits);
        m.knn_point_accuracy_qubits += err == 0 ? 1.0 : 0.0;
        m.knn_point_mae_qubits += static_cast<double>(std::llabs(err));
        ++m.failure_modes[std::string(failure_mode_name(r->failure_mode))];
    }
    const double n = static_cast<double>(reports.size());
    m.range_coverage_qubits /= n;
    m.range_coverage_gates /= n;
    m.mean_range_width_qubits /= n;
    m.mean_range_width_gates /= n;
    m.mean_candidate_count /= n;
    m.top1_accuracy /= n;
    m.knn_point_accuracy_qubits /= n;
    m.knn_point_mae_qubits /= n;
    return m;
}

EvaluationResult evaluate_corpus(const ProfileDatabase &db,
                                 const std::vector<std::pair<TimingProfile, ShotTrace>> &probes,
                                 const EvalConfig &cfg) {
    std::map<std::string, std::set<std::string>> runs_by_circuit;
    for (const ShotTrace &t : db.traces) runs_by_circuit[t.circuit_name].insert(t.run_id);
    for (const auto &[profile, trace] : probes) {
        (void)stratify(profile.labels.n_qubits, cfg.strata);
        const auto &runs = runs_by_circuit[profile.circuit_name];
        const bool has_other = std::any_of(runs.begin(), runs.end(),
                                           [&](const std::string &id) { return id != profile.run_id; });
        if (!has_other) {
            throw MissingReference("probe " + profile.circuit_name + "/" + profile.run_id +
                                   " has no other reference run of its circuit");
        }
    }

    const Identifier id(db, cfg);
    EvaluationResult out;
    out.reports.reserve(probes.size());
    for (const auto &[profile, trace] : probes) out.reports.push_back(id.identify(profile, trace));

    std::vector<const IdentificationReport *> all;
    std::map<std::string, std::vector<const IdentificationReport *>> by_stratum;
    for (const Stratum &s : cfg.strata) by_stratum[s.name];
    for (const IdentificationReport &r : out.reports) {
        all.push_back(&r);
        by_stratum[r.stratum].push_back(&r);
    }
    out.summary.overall = aggregate(all);
    for (const auto &[name, reps] : by_stratum) out.summary.strata[name] = aggregate(reps);
    return out;
}

Circuit gen_random_circuit(std::uint32_t n_qubits, std::uint32_t n_gates, std::uint64_t seed, std::string name) {
    if (n_qubits == 0) throw InvalidArgument("random circuit needs at least one qubit");
    std::vector<GateKind> kinds;
    for (GateKind k : kAllGateKinds) {
        if (counts_as_gate(k) && gate_qubit_count(k) <= n_qubits) kinds.push_back(k);
    }
    std::uint64_t counter = 0;
    auto draw = [&] { return mix_seed(seed, counter++); };

    Circuit c;
    c.name = std::move(name);
    c.n_qubits = n_qubits;
    c.gates.reserve(n_gates);
    std::vector<std::uint32_t> pool(n_qubits);
    for (std::uint32_t g = 0; g < n_gates; ++g) {
        Gate gate;
        gate.kind = kinds[draw() % kinds.size()];
        for (std::uint32_t q = 0; q < n_qubits; ++q) pool[q] = q;
        const std::size_t arity = gate_qubit_count(gate.kind);
        for (std::size_t i = 0; i < arity; ++i) {
            const std::size_t j = i + draw() % (n_qubits - i);
            std::swap(pool[i], pool[j]);
            gate.qubits.push_back(pool[i]);
        }
        for (std::size_t i = 0; i < gate_param_count(gate.kind); ++i) {
            gate.params.push_back(2.0 * std::numbers::pi * unit_double(draw()));
        }
        c.gates.push_back(std::move(gate));
    }
    c.source_hash = source_hash(emit_qasm(c));
    return c;
}

}  // namespace qleak
