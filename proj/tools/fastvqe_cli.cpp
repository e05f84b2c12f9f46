// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

// fastvqe command-line driver: run | fci | pool | sample.

#include "CLI11.hpp"
#include "fastvqe/bench.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using namespace fastvqe;

struct RunArgs {
    std::string system = "h4";
    std::vector<std::string> methods{"fast-hg"};
    std::string mode = "statevector";
    std::vector<std::uint64_t> shots{1000};
    std::vector<std::uint64_t> seeds{1};
    int max_ops = 40;
    double epsilon = 1e-6;
    double fci_cutoff = 1e-10;
    int vqe_max_iter = 500;
    double vqe_gtol = 1e-9;
    int cnot_single = 2;
    int cnot_double = 13;
    std::string out;
    std::string format = "jsonl";
    int jobs = 1;
    std::string save_ansatz;
};

std::vector<RunConfig> expand(const RunArgs& a) {
    std::vector<RunConfig> runs;
    for (const auto& m : a.methods)
        for (auto s : a.shots)
            for (auto seed : a.seeds) {
                RunConfig c;
                c.system = a.system;
                c.method = parse_method(m);
                c.mode = parse_mode(a.mode);
                c.shots = s;
                c.seed = seed;
                c.max_operators = a.max_ops;
                c.epsilon = a.epsilon;
                c.fci_cutoff = a.fci_cutoff;
                c.vqe.max_iterations = a.vqe_max_iter;
                c.vqe.gradient_tolerance = a.vqe_gtol;
                c.cnots = {a.cnot_single, a.cnot_double};
                c.validate();
                runs.push_back(c);
            }
    return runs;
}

int cmd_run(const RunArgs& a) {
    const auto runs = expand(a);
    const auto format = parse_trace_format(a.format);
    if (!a.save_ansatz.empty() && runs.size() != 1) throw std::invalid_argument("--save-ansatz needs exactly one run");

    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open trace output '" + a.out + "'");
    }
    std::ostream& sink = a.out.empty() ? std::cout : file;
    bool header = true;
    auto write_rows = [&](std::span<const IterationRecord> recs, const RunConfig& cfg, double e_fci) {
        if (recs.empty()) return;
        emit_trace(make_trace_rows(recs, cfg, e_fci), format, sink, header);
        header = false;
    };

    std::vector<RunResult> results;
    if (a.jobs <= 1) {
        // Sequential: stream each record as it is produced.
        auto sys = load_system(a.system);
        for (const auto& cfg : runs) {
            results.push_back(run_adaptive(*sys, cfg, [&](const IterationRecord& r) {
                write_rows(std::span(&r, 1), cfg, sys->fci_energy());
            }));
        }
    } else {
        BenchmarkSuite suite{runs, a.out, format};
        auto sr = run_suite(suite, a.jobs);
        for (std::size_t i = 0; i < runs.size(); ++i)
            write_rows(sr.results[i].records, runs[i], sr.fci_baselines.at(runs[i].system));
        results = std::move(sr.results);
    }

    if (!a.save_ansatz.empty()) {
        std::ofstream af(a.save_ansatz);
        if (!af) throw IoError("cannot open ansatz output '" + a.save_ansatz + "'");
        save_ansatz(results.front().ansatz, a.system, af);
    }

    int status = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i].complete) {
            std::cerr << fmt::format("run {} ({} seed {}) aborted: {}\n", i, to_string(runs[i].method), runs[i].seed,
                                     results[i].error);
            status = 3;
        } else if (results[i].records.empty()) {
            std::cerr << fmt::format("run {} produced no iterations\n", i);
        }
    }
    return status;
}

int cmd_fci(const std::string& system) {
    const auto mi = load_integrals(system);
    const auto res = fci_ground_energy(to_spin_orbitals(mi), mi.n_elec, mi.ms2);
    std::cout << fmt::format("{:.12f}\n", res.energy);
    return 0;
}

int cmd_pool(const std::string& system) {
    const auto mi = load_integrals(system);
    const int n_so = 2 * mi.n_orb;
    const auto pool = build_pool(hf_determinant(mi.n_elec, mi.ms2, n_so), n_so);
    for (std::size_t i = 0; i < pool.ops.size(); ++i)
        std::cout << fmt::format("{} {} {}\n", i, pool.ops[i].is_double() ? "double" : "single", pool.ops[i].label());
    return 0;
}

int cmd_sample(const std::string& system, const std::string& ansatz_path, std::uint64_t shots, std::uint64_t seed) {
    const auto mi = load_integrals(system);
    const int n_so = 2 * mi.n_orb;
    std::vector<AnsatzElement> ansatz;
    if (!ansatz_path.empty()) {
        std::ifstream in(ansatz_path);
        if (!in) throw IoError("cannot open ansatz file '" + ansatz_path + "'");
        ansatz = load_ansatz(in);
    }
    for (const auto& el : ansatz)
        if (!is_valid_excitation(el.op, n_so)) throw std::invalid_argument("ansatz operator " + el.op.label() +
                                                                           " does not fit the system");
    const auto state = prepare_ansatz_state(hf_determinant(mi.n_elec, mi.ms2, n_so), n_so, ansatz);
    Rng rng(derive_seed(seed, 1, 0));
    ShotLedger ledger;
    const auto sample = sample_determinants(state, shots, rng, ledger);
    for (const auto& [det, count] : sample.counts) std::cout << fmt::format("{} {}\n", to_string(det, n_so), count);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fastvqe: adaptive VQE benchmarks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file; keys go under a [run] section, command-line flags win");

    RunArgs ra;
    auto* run = app.add_subcommand("run", "run adaptive ansatz construction and write a trace");
    run->add_option("--system", ra.system, "fixture name, FCIDUMP path or synth:SEED:NORB:NELEC")->capture_default_str();
    run->add_option("--method", ra.methods, "adapt | fast-hg | fast-hsci (repeatable)")->capture_default_str();
    run->add_option("--mode", ra.mode, "statevector | finite")->capture_default_str();
    run->add_option("--shots", ra.shots, "shots per expectation value (repeatable)")->capture_default_str();
    run->add_option("--seed", ra.seeds, "RNG seed (repeatable)")->capture_default_str();
    run->add_option("--max-ops", ra.max_ops, "ansatz length cap")->capture_default_str();
    run->add_option("--epsilon", ra.epsilon, "selection threshold")->capture_default_str();
    run->add_option("--fci-cutoff", ra.fci_cutoff, "stop once |E - E_FCI| drops below this")->capture_default_str();
    run->add_option("--vqe-max-iter", ra.vqe_max_iter, "L-BFGS iteration cap")->capture_default_str();
    run->add_option("--vqe-gtol", ra.vqe_gtol, "L-BFGS gradient tolerance")->capture_default_str();
    run->add_option("--cnot-single", ra.cnot_single, "CNOTs per single excitation")->capture_default_str();
    run->add_option("--cnot-double", ra.cnot_double, "CNOTs per double excitation")->capture_default_str();
    run->add_option("--out", ra.out, "trace file (stdout if omitted)");
    run->add_option("--format", ra.format, "jsonl | csv")->capture_default_str();
    run->add_option("--jobs", ra.jobs, "parallel runs")->capture_default_str()->check(CLI::PositiveNumber);
    run->add_option("--save-ansatz", ra.save_ansatz, "write the final ansatz as JSON");

    std::string fci_system;
    auto* fci = app.add_subcommand("fci", "print the FCI ground-state energy (Hartree)");
    fci->add_option("--system", fci_system, "fixture name, FCIDUMP path or synth spec")->required();

    std::string pool_system;
    auto* pool = app.add_subcommand("pool", "list the particle-hole operator pool");
    pool->add_option("--system", pool_system, "fixture name, FCIDUMP path or synth spec")->required();

    std::string sample_system, sample_ansatz;
    std::uint64_t sample_shots = 1000, sample_seed = 1;
    auto* sample = app.add_subcommand("sample", "sample determinants from a saved ansatz");
    sample->add_option("--system", sample_system, "fixture name, FCIDUMP path or synth spec")->required();
    sample->add_option("--ansatz", sample_ansatz, "ansatz JSON (HF reference if omitted)");
    sample->add_option("--shots", sample_shots, "number of shots")->capture_default_str()->check(CLI::PositiveNumber);
    sample->add_option("--seed", sample_seed, "RNG seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(ra);
        if (*fci) return cmd_fci(fci_system);
        if (*pool) return cmd_pool(pool_system);
        if (*sample) return cmd_sample(sample_system, sample_ansatz, sample_shots, sample_seed);
    } catch (const std::exception& e) {
        std::cerr << "fastvqe: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
