// End-to-end workflow behind the CLI: data generation/ingestion, solver
// instance construction, VQE solve, reconstruction, and benchmarking, all
// file-mediated so each stage is independently inspectable. Every command is
// also callable in-process; the file route and the in-process route produce
// identical results for the same seeds.

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "vqt/counts_io.hpp"
#include "vqt/ising.hpp"
#include "vqt/optimize.hpp"
#include "vqt/reconstruction.hpp"
#include "vqt/tomography.hpp"
#include "vqt/vqe.hpp"

namespace vqt {

struct RunConfig {
    BellKind state = BellKind::Correlated;
    std::optional<std::pair<double, double>> weights;
    double noise_mean = 0.0; // Poisson mean counts per basis group; 0 = exact
    // binary 1 encodes the matrix entry 1/encoding_scale; 2 makes a Bell
    // state's 0.5 entries land exactly on bit value 1
    double encoding_scale = 2.0;
    AnsatzFamily ansatz = AnsatzFamily::Ry;
    std::size_t depth = 1;
    OptimizerConfig optimizer;
    Aggregation aggregation = Aggregation::Top1;
    double beta = 0.0; // boltzmann aggregation; 0 = auto
    std::size_t sample_shots = 4096;
    std::uint64_t seed = 1;
    std::vector<std::uint64_t> seeds;      // benchmark grid
    std::vector<double> noise_means;       // benchmark grid
    std::filesystem::path out = "out";
    bool verbose = false;
};

RunConfig load_run_config(const std::filesystem::path& path);
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// --- shared pipeline stages ---------------------------------------------

DensityMatrix config_state(const RunConfig& cfg);
std::string state_label(const RunConfig& cfg);

// Exact Born probabilities, or Poisson counts normalized per basis group.
MeasurementVector config_measurements(const RunConfig& cfg, const DensityMatrix& rho);

// (Q, t, const) from the scaled measurement vector, then the Ising model.
IsingModel build_ising_instance(const MeasurementMatrix& t_matrix,
                                const MeasurementVector& m, double encoding_scale);

struct SolveArtifacts {
    IsingModel model;
    OptimizeResult opt;
    BitstringDistribution distribution;
};

SolveArtifacts solve_instance(const RunConfig& cfg, const MeasurementVector& m);

ReconstructionReport run_end_to_end(const RunConfig& cfg);

// --- density-matrix JSON ---------------------------------------------------

void save_state_json(const DensityMatrix& rho, const std::string& label,
                     const std::filesystem::path& path);
DensityMatrix load_state_json(const std::filesystem::path& path, std::string* label = nullptr);

// --- commands ---------------------------------------------------------------

struct GenDataResult {
    std::filesystem::path counts_file;
    std::filesystem::path probs_file;
    std::filesystem::path state_file;
};

GenDataResult cmd_gen_data(const RunConfig& cfg);

struct SolveSummary {
    std::filesystem::path ising_file;
    std::filesystem::path theta_file;
    std::filesystem::path trace_file;
    std::filesystem::path distribution_file;
    double final_energy = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
    Bitstring modal;
    std::optional<double> oracle_energy;
    std::optional<Bitstring> oracle_minimizer;
};

SolveSummary cmd_solve(const RunConfig& cfg, const std::filesystem::path& data_file,
                       bool with_oracle = false);

// VQE loop over an already-serialized Ising model.
SolveSummary cmd_solve_ising(const RunConfig& cfg, const std::filesystem::path& ising_file,
                             bool with_oracle = false);

struct ReconstructSummary {
    std::filesystem::path report_file;
    std::filesystem::path heatmap_file;
    ReconstructionReport report;
};

ReconstructSummary cmd_reconstruct(const RunConfig& cfg,
                                   const std::filesystem::path& distribution_file,
                                   const std::filesystem::path& reference_file,
                                   const std::optional<std::filesystem::path>& ising_file =
                                       std::nullopt,
                                   const std::string& trace_file = {});

struct OracleSummary {
    std::filesystem::path oracle_file;
    Bitstring minimizer;
    double energy = 0.0;
};

// Exactly one of data_file / ising_file must be given.
OracleSummary cmd_oracle(const RunConfig& cfg,
                         const std::optional<std::filesystem::path>& data_file,
                         const std::optional<std::filesystem::path>& ising_file);

std::filesystem::path cmd_benchmark(const RunConfig& cfg);

// distribution file I/O (CSV `bitstring,count`)
void save_distribution(const BitstringDistribution& dist, const std::filesystem::path& path);
BitstringDistribution load_distribution(const std::filesystem::path& path);

// measurement ingestion shared by solve/oracle: counts are normalized,
// probability files are used as-is
MeasurementVector load_measurements(const std::filesystem::path& path);

} // namespace vqt
