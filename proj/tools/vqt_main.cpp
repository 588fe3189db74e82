// vqt: reconstruct two-qubit states from tomographic measurement data by
// mapping the least-squares cost onto an Ising Hamiltonian and minimizing it
// with a simulated VQE. Subcommands cover the full workflow: gen-data,
// solve, reconstruct, benchmark, and the brute-force oracle.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vqt/errors.hpp"
#include "vqt/kernels.hpp"
#include "vqt/pipeline.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool verbose = false;
};

vqt::RunConfig resolve_config(const GlobalArgs& g) {
    vqt::RunConfig cfg;
    if (!g.config_path.empty())
        cfg = vqt::load_run_config(g.config_path);
    if (g.seed) {
        cfg.seed = *g.seed;
        cfg.optimizer.seed = *g.seed;
    }
    if (g.out)
        cfg.out = *g.out;
    cfg.verbose = g.verbose;
    if (cfg.verbose)
        std::cerr << "kernels: " << vqt::kernels::active().name << "\n";
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ising-mapped variational tomography of two-qubit states"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    GlobalArgs global;
    app.add_option("--config", global.config_path, "config file (key = value lines)");
    app.add_option("--seed", global.seed, "override the config seed");
    app.add_option("--out", global.out, "override the output directory");
    app.add_flag("--verbose", global.verbose, "report progress on stderr");

    auto* gen = app.add_subcommand("gen-data", "generate count/probability files for a Bell state");

    auto* solve = app.add_subcommand("solve", "build the Ising instance and run the VQE loop");
    std::string solve_data, solve_ising;
    bool solve_oracle = false;
    auto* solve_input = solve->add_option_group("input");
    solve_input->add_option("--data", solve_data, "counts.csv or probs.csv");
    solve_input->add_option("--ising", solve_ising, "serialized Ising model to solve directly");
    solve_input->require_option(1);
    solve->add_flag("--oracle", solve_oracle, "also run the brute-force oracle");

    auto* rec = app.add_subcommand("reconstruct", "aggregate a sampled distribution into a state");
    std::string rec_dist, rec_ref, rec_ising, rec_trace;
    rec->add_option("--distribution", rec_dist, "distribution.csv from solve")->required();
    rec->add_option("--reference", rec_ref, "state.json to compare against")->required();
    rec->add_option("--ising", rec_ising, "ising.txt (needed for boltzmann aggregation)");
    rec->add_option("--trace", rec_trace, "trace.csv path recorded in the report");

    auto* bench = app.add_subcommand("benchmark", "run all methods across seeds and noise levels");

    auto* oracle = app.add_subcommand("oracle", "brute-force minimum of an instance");
    std::string oracle_data, oracle_ising;
    oracle->add_option("--data", oracle_data, "counts.csv or probs.csv");
    oracle->add_option("--ising", oracle_ising, "serialized Ising model");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const vqt::RunConfig cfg = resolve_config(global);
        if (gen->parsed()) {
            const auto result = vqt::cmd_gen_data(cfg);
            std::cout << "counts: " << result.counts_file.string() << "\n"
                      << "probs: " << result.probs_file.string() << "\n"
                      << "state: " << result.state_file.string() << "\n";
        } else if (solve->parsed()) {
            const auto summary = solve_ising.empty()
                                     ? vqt::cmd_solve(cfg, solve_data, solve_oracle)
                                     : vqt::cmd_solve_ising(cfg, solve_ising, solve_oracle);
            std::cout << "final_energy: " << summary.final_energy << "\n"
                      << "evaluations: " << summary.evaluations << "\n"
                      << "converged: " << (summary.converged ? "true" : "false") << "\n"
                      << "modal_bitstring: " << vqt::bitstring_to_string(summary.modal) << "\n";
            if (summary.oracle_energy) {
                std::cout << "oracle_energy: " << *summary.oracle_energy << "\n"
                          << "oracle_bitstring: "
                          << vqt::bitstring_to_string(*summary.oracle_minimizer) << "\n";
            }
        } else if (rec->parsed()) {
            std::optional<std::filesystem::path> ising;
            if (!rec_ising.empty()) ising = rec_ising;
            const auto summary = vqt::cmd_reconstruct(cfg, rec_dist, rec_ref, ising, rec_trace);
            std::cout << "fidelity: " << summary.report.fidelity_vs_reference << "\n"
                      << "report: " << summary.report_file.string() << "\n"
                      << "heatmap: " << summary.heatmap_file.string() << "\n";
        } else if (bench->parsed()) {
            const auto path = vqt::cmd_benchmark(cfg);
            std::cout << "benchmark: " << path.string() << "\n";
        } else if (oracle->parsed()) {
            std::optional<std::filesystem::path> data, ising;
            if (!oracle_data.empty()) data = oracle_data;
            if (!oracle_ising.empty()) ising = oracle_ising;
            const auto summary = vqt::cmd_oracle(cfg, data, ising);
            std::cout << "bitstring: " << vqt::bitstring_to_string(summary.minimizer) << "\n"
                      << "energy: " << summary.energy << "\n";
        }
    } catch (const vqt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
