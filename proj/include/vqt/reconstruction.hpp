// From sampled bitstrings back to physical density matrices: aggregation of
// the distribution into a guess matrix, the P^dagger P / tr projection onto
// physical states, Uhlmann fidelity, and the classical baselines (pseudo-
// inverse linear inversion, iterative R-rho-R maximum likelihood).

#pragma once

#include <optional>
#include <string>

#include "vqt/ising.hpp"
#include "vqt/tomography.hpp"
#include "vqt/vqe.hpp"

namespace vqt {

struct GuessMatrix {
    ComplexMatrix matrix; // real-valued d x d, entries in [0, 1]
};

enum class Aggregation {
    Top1,          // reshape the modal bitstring
    CountWeighted, // average bitstrings weighted by count / total
    Boltzmann,     // weight distinct bitstrings by exp(-beta * energy)
};

Aggregation aggregation_from_string(const std::string& s);
std::string to_string(Aggregation a);

struct BoltzmannOptions {
    // beta <= 0 selects the default 1/|E_min| over the distribution support
    double beta = 0.0;
};

GuessMatrix aggregate_bitstrings(const BitstringDistribution& dist, Aggregation mode,
                                 const IsingModel* model = nullptr,
                                 const BoltzmannOptions& opts = {});

// rho = P^dagger P / tr(P^dagger P); physical by construction.
DensityMatrix physical_projection(const GuessMatrix& p);

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clipped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Pseudo-inverse least squares, then hermitize, clip negative eigenvalues,
// renormalize. Throws RankDeficient when T has column rank below dim^2.
DensityMatrix linear_inversion(const MeasurementMatrix& t_matrix,
                               const MeasurementVector& m);

struct MleResult {
    DensityMatrix rho;
    bool converged = false;
    std::size_t iterations = 0;
};

// R-rho-R fixed-point iteration from the maximally mixed state.
MleResult mle_rhor(const MeasurementMatrix& t_matrix, const MeasurementVector& m,
                   std::size_t max_iters = 5000, double tol = 1e-10);

enum class ReconstructionMethod { Vqe, BruteForce, LinearInversion, Mle };

std::string to_string(ReconstructionMethod m);

struct ReconstructionReport {
    DensityMatrix rho_hat;
    double fidelity_vs_reference = 0.0;
    ReconstructionMethod method = ReconstructionMethod::Vqe;
    Aggregation aggregation = Aggregation::Top1;
    std::string reference_label;
    std::string trace_file; // optional pointer to the convergence CSV
};

// aggregate -> project -> compare against the reference.
ReconstructionReport reconstruct(const BitstringDistribution& dist, Aggregation mode,
                                 const DensityMatrix& reference,
                                 ReconstructionMethod method,
                                 const IsingModel* model = nullptr,
                                 const BoltzmannOptions& opts = {});

} // namespace vqt
