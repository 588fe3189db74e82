// Derivative-free minimization of the ansatz energy: Nelder-Mead with
// multi-start (deterministic default) and SPSA (for shot-noise mode).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqt/ising.hpp"
#include "vqt/vqe.hpp"

namespace vqt {

enum class OptMethod { NelderMeadMultistart, Spsa };

OptMethod opt_method_from_string(const std::string& s);
std::string to_string(OptMethod m);

struct OptimizerConfig {
    OptMethod method = OptMethod::NelderMeadMultistart;
    std::size_t budget = 5000; // max objective evaluations
    std::size_t restarts = 8;
    std::uint64_t seed = 1;
    std::size_t shots = 0; // 0 = analytic expectation values
    double tolerance = 1e-6;

    void validate() const;
};

struct TracePoint {
    std::size_t iteration = 0; // evaluation index, 1-based
    double energy = 0.0;
    double best_energy = 0.0;
    double elapsed_ms = 0.0;
};

using ConvergenceTrace = std::vector<TracePoint>;

struct OptimizeResult {
    ParameterVector theta;
    double energy = 0.0; // best energy seen
    ConvergenceTrace trace;
    std::size_t evaluations = 0;
    // false when the evaluation budget ran out before the search settled;
    // the best point found is still returned
    bool converged = false;
};

OptimizeResult optimize(const IsingModel& model, const AnsatzSpec& spec,
                        const OptimizerConfig& config);

} // namespace vqt
