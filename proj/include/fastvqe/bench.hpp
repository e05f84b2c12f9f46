// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bench.hpp
 * @brief Benchmark harness: system/fixture resolution, multi-run
 *        orchestration, trace emission (JSONL / CSV) and ansatz files.
 */

#pragma once

#include "fastvqe/solver.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fastvqe {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One trace row; column order is the serialized order.
struct TraceRow {
    int iteration = 0;
    std::string method;
    std::string mode;
    std::uint64_t shots_per_eval = 0;
    double energy_hartree = 0.0;
    double error_vs_fci_hartree = 0.0;
    int n_params = 0;
    std::uint64_t n_cnots = 0;
    std::uint64_t cumulative_shots = 0;
    std::string selected_operator;
    std::uint64_t seed = 0;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

inline constexpr const char* kTraceColumns[] = {
    "iteration",      "method",  "mode",     "shots_per_eval",   "energy_hartree",    "error_vs_fci_hartree",
    "n_params",       "n_cnots", "cumulative_shots", "selected_operator", "seed"};

enum class TraceFormat { Jsonl, Csv };

[[nodiscard]] TraceFormat parse_trace_format(const std::string& s);

[[nodiscard]] std::vector<TraceRow> make_trace_rows(std::span<const IterationRecord> records, const RunConfig& config,
                                                    double fci_baseline);

/// Writes rows; CSV gets a header unless `header` is false. Throws IoError on
/// a failed sink and std::invalid_argument for an empty trace.
void emit_trace(std::span<const TraceRow> rows, TraceFormat format, std::ostream& sink, bool header = true);

[[nodiscard]] std::vector<TraceRow> parse_trace_csv(std::istream& in);
[[nodiscard]] std::vector<TraceRow> parse_trace_jsonl(std::istream& in);

/// FASTVQE_FIXTURES if set, otherwise the shipped data directory.
[[nodiscard]] std::string fixture_dir();

/// Accepts a file path, a fixture name ("h4" -> <fixtures>/h4.fcidump) or
/// "synth:SEED:NORB:NELEC".
[[nodiscard]] MolecularIntegrals load_integrals(const std::string& spec);
[[nodiscard]] std::shared_ptr<const System> load_system(const std::string& spec);

/// Ansatz JSON: {"system": ..., "elements": [{"operator": "0_4->2_6", "theta": ...}, ...]}.
void save_ansatz(std::span<const AnsatzElement> ansatz, const std::string& system, std::ostream& out);
[[nodiscard]] std::vector<AnsatzElement> load_ansatz(std::istream& in, std::string* system = nullptr);

struct BenchmarkSuite {
    std::vector<RunConfig> runs;
    std::string output;
    TraceFormat format = TraceFormat::Jsonl;
};

struct SuiteResult {
    std::vector<RunResult> results;                  ///< same order as suite.runs
    std::map<std::string, double> fci_baselines;     ///< per system spec
};

/// Runs every config, `jobs` at a time. Configs sharing a system spec share
/// one System (and one FCI baseline). Results do not depend on `jobs`.
[[nodiscard]] SuiteResult run_suite(const BenchmarkSuite& suite, int jobs = 1);

}  // namespace fastvqe
