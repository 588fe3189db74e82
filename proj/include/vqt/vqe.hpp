// Product-state simulation of the entangling-gate-free ansatz families.
// Because the Hamiltonian is diagonal in the computational basis, each qubit
// evolves independently under its own 2x2 rotation sequence and
// <Z_j Z_k> = <Z_j><Z_k> exactly.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "vqt/complex_matrix.hpp"
#include "vqt/ising.hpp"

namespace vqt {

enum class AnsatzFamily {
    Ry,     // one R_y angle per qubit per layer
    RzRyRz, // Euler block R_z, R_y, R_z per qubit per layer
};

struct AnsatzSpec {
    AnsatzFamily family = AnsatzFamily::Ry;
    std::size_t depth = 1; // repeated blocks
    std::size_t n_qubits = 0;

    std::size_t gates_per_block() const { return family == AnsatzFamily::Ry ? 1 : 3; }
    std::size_t parameter_count() const { return n_qubits * depth * gates_per_block(); }
};

// Angles in radians, qubit-major: all of qubit 0's blocks first, gates in
// application order within a block.
using ParameterVector = std::vector<double>;

struct ProductState {
    // amplitudes (alpha_j, beta_j) per qubit, |alpha|^2 + |beta|^2 = 1
    std::vector<std::array<cplx, 2>> qubits;

    std::size_t n_qubits() const { return qubits.size(); }
};

struct BitstringDistribution {
    std::map<Bitstring, long long> counts; // keyed in MSB-first code order
    long long total_shots = 0;
};

// shots == 0 selects exact (analytic) expectation values.
struct EvalMode {
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    static EvalMode analytic() { return {}; }
    static EvalMode sampled(std::size_t shots, std::uint64_t seed) { return {shots, seed}; }
};

ProductState prepare_state(const AnsatzSpec& spec, const ParameterVector& theta);

// <Z_j> = |alpha_j|^2 - |beta_j|^2
double expect_z(const ProductState& state, std::size_t j);

double energy_expectation(const AnsatzSpec& spec, const ParameterVector& theta,
                          const IsingModel& model, const EvalMode& mode = EvalMode::analytic());

BitstringDistribution sample_bitstrings(const AnsatzSpec& spec, const ParameterVector& theta,
                                        std::size_t shots, std::uint64_t seed);

// Modal bitstring; ties break toward the lowest code.
Bitstring modal_bitstring(const BitstringDistribution& dist);

} // namespace vqt
