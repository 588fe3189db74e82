// Shared generators and independent oracles for the test suites. The oracles
// here deliberately avoid the library's own computational paths: costs are
// evaluated as raw residual norms, expectation values against a full 2^n
// statevector.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "vqt/complex_matrix.hpp"
#include "vqt/ising.hpp"
#include "vqt/tomography.hpp"
#include "vqt/vqe.hpp"

namespace vqt::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = cplx(gauss(rng), gauss(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    const ComplexMatrix g = random_matrix(rng, n, n);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

inline ComplexMatrix random_psd(std::mt19937_64& rng, std::size_t n) {
    const ComplexMatrix g = random_matrix(rng, n, n);
    return g.adjoint() * g;
}

inline DensityMatrix random_density(std::mt19937_64& rng, std::size_t n) {
    ComplexMatrix p = random_psd(rng, n);
    const double tr = p.trace().real();
    p *= cplx{1.0 / tr, 0.0};
    return DensityMatrix{n, p};
}

// density matrix with purely real entries (outer product of a real vector
// mixed with a real diagonal)
inline DensityMatrix random_real_density(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = gauss(rng);
    ComplexMatrix p = g.adjoint() * g;
    const double tr = p.trace().real();
    p *= cplx{1.0 / tr, 0.0};
    return DensityMatrix{n, p};
}

// ||m - T p||^2 computed directly from the residual
inline double residual_cost(const ComplexMatrix& t, const std::vector<double>& m,
                            const std::vector<double>& p) {
    double acc = 0.0;
    for (std::size_t k = 0; k < t.rows(); ++k) {
        cplx tp = 0.0;
        for (std::size_t j = 0; j < t.cols(); ++j) tp += t(k, j) * p[j];
        acc += std::norm(m[k] - tp);
    }
    return acc;
}

// random (T, m) pair wrapped as a MeasurementMatrix for mapping tests
inline MeasurementMatrix random_measurement_matrix(std::mt19937_64& rng, std::size_t rows,
                                                   std::size_t cols) {
    MeasurementMatrix mm;
    mm.t = random_matrix(rng, rows, cols);
    mm.projector_labels.assign(rows, "?");
    return mm;
}

// <H> from an explicitly assembled 2^n statevector; the independent check of
// the product-state factorization
inline double statevector_energy(const AnsatzSpec& spec, const ParameterVector& theta,
                                 const IsingModel& model) {
    const ProductState state = prepare_state(spec, theta);
    const std::size_t n = spec.n_qubits;
    const std::size_t dim = std::size_t{1} << n;
    std::vector<cplx> amps(dim);
    for (std::size_t code = 0; code < dim; ++code) {
        cplx a = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const bool one = (code >> (n - 1 - j)) & 1u;
            a *= state.qubits[j][one ? 1 : 0];
        }
        amps[code] = a;
    }
    double energy = 0.0;
    for (std::size_t code = 0; code < dim; ++code) {
        const double prob = std::norm(amps[code]);
        if (prob == 0.0) continue;
        energy += prob * energy_of_bitstring(bitstring_from_code(code, n), model);
    }
    return energy;
}

} // namespace vqt::testing
