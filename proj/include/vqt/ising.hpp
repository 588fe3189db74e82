// Least-squares tomography cost as a quadratic form and its exact rewrite as
// an Ising (Pauli-Z) Hamiltonian over one qubit per encoded real scalar.
//
// Encoding: bit b_j in {0,1} maps to spin z_j = 1 - 2*b_j (|0> -> +1) and to
// the scalar p_j = (1 - z_j)/2 = b_j. With couplings stored once per
// unordered pair, energy_of_bitstring(b) == cost(p(b)) exactly, including
// the constant from the Z^2 = I diagonal terms.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vqt/complex_matrix.hpp"
#include "vqt/tomography.hpp"

namespace vqt {

struct QuadraticForm {
    ComplexMatrix q;     // T^dagger T, N x N Hermitian PSD
    std::vector<cplx> t; // T^dagger m
    double constant = 0; // m^dagger m
};

// Spin Hamiltonian sum_{j<k} J_jk Z_j Z_k + sum_j h_j Z_j + offset. The
// couplings are kept as a dense symmetric zero-diagonal table (the kernels'
// native layout); coupling(j,k) is the full coefficient of the unordered
// pair term.
struct IsingModel {
    std::size_t n = 0;
    std::vector<double> coupling; // n*n row-major, symmetric, zero diagonal
    std::vector<double> field;    // length n
    double offset = 0.0;

    double coupling_at(std::size_t j, std::size_t k) const { return coupling[j * n + k]; }
    bool all_finite() const;
};

using Bitstring = std::vector<std::uint8_t>;

// MSB-first integer value of a bitstring (bit 0 is the most significant).
std::uint64_t bitstring_code(const Bitstring& b);
Bitstring bitstring_from_code(std::uint64_t code, std::size_t n);
std::string bitstring_to_string(const Bitstring& b);
Bitstring bitstring_from_string(const std::string& s);

QuadraticForm quadratic_form(const MeasurementMatrix& t_matrix, std::span<const double> m);
QuadraticForm quadratic_form(const MeasurementMatrix& t_matrix, const MeasurementVector& m);

// ||m - T p||^2 evaluated through (Q, t, constant); equals
// p^T Re(Q) p - 2 Re(t) . p + constant for real p.
double cost(std::span<const double> p, const QuadraticForm& qf);

// Coefficient extraction. Only Re(Q) and Re(t) enter; imaginary residues are
// discarded wholesale.
IsingModel ising_coefficients(const QuadraticForm& qf);

double energy_of_bitstring(const Bitstring& b, const IsingModel& model);

struct BruteForceResult {
    Bitstring minimizer;
    double energy = 0.0;
};

// Exact global minimum by exhaustive enumeration; ties break toward the
// lowest bitstring code. Guarded at n <= 24.
BruteForceResult brute_force_minimum(const IsingModel& model);

void save_ising(const IsingModel& model, const std::filesystem::path& path);
IsingModel load_ising(const std::filesystem::path& path);

} // namespace vqt
