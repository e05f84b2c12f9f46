// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastvqe/bench.hpp"

#include "json.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#ifndef FASTVQE_DEFAULT_FIXTURE_DIR
#define FASTVQE_DEFAULT_FIXTURE_DIR "data"
#endif

namespace fastvqe {

using ordered_json = nlohmann::ordered_json;

TraceFormat parse_trace_format(const std::string& s) {
    if (s == "jsonl") return TraceFormat::Jsonl;
    if (s == "csv") return TraceFormat::Csv;
    throw std::invalid_argument("unknown trace format '" + s + "' (jsonl | csv)");
}

std::vector<TraceRow> make_trace_rows(std::span<const IterationRecord> records, const RunConfig& config,
                                      double fci_baseline) {
    std::vector<TraceRow> rows;
    rows.reserve(records.size());
    for (const auto& r : records) {
        TraceRow row;
        row.iteration = r.iteration;
        row.method = to_string(config.method);
        row.mode = to_string(config.mode);
        row.shots_per_eval = config.shots_per_eval();
        row.energy_hartree = r.energy;
        row.error_vs_fci_hartree = r.energy - fci_baseline;
        row.n_params = r.n_params;
        row.n_cnots = r.n_cnots;
        row.cumulative_shots = r.cumulative_shots;
        row.selected_operator = r.selected.label();
        row.seed = config.seed;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

ordered_json row_to_json(const TraceRow& r) {
    ordered_json j;
    j["iteration"] = r.iteration;
    j["method"] = r.method;
    j["mode"] = r.mode;
    j["shots_per_eval"] = r.shots_per_eval;
    j["energy_hartree"] = r.energy_hartree;
    j["error_vs_fci_hartree"] = r.error_vs_fci_hartree;
    j["n_params"] = r.n_params;
    j["n_cnots"] = r.n_cnots;
    j["cumulative_shots"] = r.cumulative_shots;
    j["selected_operator"] = r.selected_operator;
    j["seed"] = r.seed;
    return j;
}

std::string csv_header() {
    std::string h;
    for (const char* c : kTraceColumns) {
        if (!h.empty()) h += ',';
        h += c;
    }
    return h;
}

}  // namespace

void emit_trace(std::span<const TraceRow> rows, TraceFormat format, std::ostream& sink, bool header) {
    if (rows.empty()) throw std::invalid_argument("emit_trace: no records");
    if (format == TraceFormat::Csv && header) sink << csv_header() << '\n';
    for (const auto& r : rows) {
        if (format == TraceFormat::Jsonl) {
            sink << row_to_json(r).dump() << '\n';
        } else {
            sink << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.iteration, r.method, r.mode, r.shots_per_eval,
                                r.energy_hartree, r.error_vs_fci_hartree, r.n_params, r.n_cnots, r.cumulative_shots,
                                r.selected_operator, r.seed);
        }
    }
    sink.flush();
    if (!sink) throw IoError("trace sink write failed");
}

std::vector<TraceRow> parse_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != csv_header()) throw IoError("CSV trace lacks the expected header row");
    std::vector<TraceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != std::size(kTraceColumns)) throw IoError("CSV trace row has the wrong column count: " + line);
        TraceRow r;
        r.iteration = std::stoi(f[0]);
        r.method = f[1];
        r.mode = f[2];
        r.shots_per_eval = std::stoull(f[3]);
        r.energy_hartree = std::stod(f[4]);
        r.error_vs_fci_hartree = std::stod(f[5]);
        r.n_params = std::stoi(f[6]);
        r.n_cnots = std::stoull(f[7]);
        r.cumulative_shots = std::stoull(f[8]);
        r.selected_operator = f[9];
        r.seed = std::stoull(f[10]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<TraceRow> parse_trace_jsonl(std::istream& in) {
    std::vector<TraceRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = ordered_json::parse(line);
        TraceRow r;
        r.iteration = j.at("iteration").get<int>();
        r.method = j.at("method").get<std::string>();
        r.mode = j.at("mode").get<std::string>();
        r.shots_per_eval = j.at("shots_per_eval").get<std::uint64_t>();
        r.energy_hartree = j.at("energy_hartree").get<double>();
        r.error_vs_fci_hartree = j.at("error_vs_fci_hartree").get<double>();
        r.n_params = j.at("n_params").get<int>();
        r.n_cnots = j.at("n_cnots").get<std::uint64_t>();
        r.cumulative_shots = j.at("cumulative_shots").get<std::uint64_t>();
        r.selected_operator = j.at("selected_operator").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string fixture_dir() {
    if (const char* env = std::getenv("FASTVQE_FIXTURES"); env && *env) return env;
    return FASTVQE_DEFAULT_FIXTURE_DIR;
}

MolecularIntegrals load_integrals(const std::string& spec) {
    if (spec.rfind("synth:", 0) == 0) {
        std::vector<std::string> parts;
        std::stringstream ss(spec.substr(6));
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() != 3) throw std::invalid_argument("synthetic system spec is synth:SEED:NORB:NELEC");
        return synth_integrals(std::stoull(parts[0]), std::stoi(parts[1]), std::stoi(parts[2]));
    }
    namespace fs = std::filesystem;
    if (fs::exists(spec)) return load_fcidump(spec);
    const fs::path fixture = fs::path(fixture_dir()) / (spec + ".fcidump");
    if (fs::exists(fixture)) return load_fcidump(fixture.string());
    throw IoError(fmt::format("cannot resolve system '{}' (no such file, no fixture {})", spec,
                                         fixture.string()));
}

std::shared_ptr<const System> load_system(const std::string& spec) {
    return std::make_shared<const System>(spec, load_integrals(spec));
}

void save_ansatz(std::span<const AnsatzElement> ansatz, const std::string& system, std::ostream& out) {
    ordered_json j;
    j["system"] = system;
    j["elements"] = ordered_json::array();
    for (const auto& el : ansatz) j["elements"].push_back({{"operator", el.op.label()}, {"theta", el.theta}});
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed to write ansatz");
}

std::vector<AnsatzElement> load_ansatz(std::istream& in, std::string* system) {
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed ansatz file: ") + e.what());
    }
    if (system && j.contains("system")) *system = j["system"].get<std::string>();
    std::vector<AnsatzElement> out;
    for (const auto& el : j.at("elements"))
        out.push_back({parse_excitation_label(el.at("operator").get<std::string>()), el.at("theta").get<double>()});
    return out;
}

SuiteResult run_suite(const BenchmarkSuite& suite, int jobs) {
    SuiteResult out;
    std::map<std::string, std::shared_ptr<const System>> systems;
    for (const auto& cfg : suite.runs) {
        cfg.validate();
        if (!systems.count(cfg.system)) {
            auto sys = load_system(cfg.system);
            out.fci_baselines[cfg.system] = sys->fci_energy();
            systems.emplace(cfg.system, std::move(sys));
        }
    }

    out.results.resize(suite.runs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < suite.runs.size(); i = next++) {
            const auto& cfg = suite.runs[i];
            out.results[i] = run_adaptive(*systems.at(cfg.system), cfg);
        }
    };
    const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(suite.runs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace fastvqe
