// Hermitian eigendecomposition (cyclic complex Jacobi) and the PSD matrix
// square root built on it. Jacobi is chosen for robustness: inputs are
// at most 16x16 density-matrix-scale operators.

#pragma once

#include <vector>

#include "vqt/complex_matrix.hpp"

namespace vqt {

struct HermitianEig {
    std::vector<double> eigenvalues; // sorted ascending
    ComplexMatrix eigenvectors;      // unitary, columns match eigenvalue order
};

// Throws NotHermitian if the asymmetry exceeds `tol`, NoConvergence if the
// sweep iteration stalls.
HermitianEig hermitian_eig(const ComplexMatrix& a, double tol = 1e-10);

// V * diag(eigenvalues) * V^dagger.
ComplexMatrix eig_reconstruct(const HermitianEig& e);

// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clipped to zero;
// anything below -1e-10 throws NotPsd.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a);

} // namespace vqt
