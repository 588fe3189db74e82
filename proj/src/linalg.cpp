#include "vqt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vqt/errors.hpp"

namespace vqt {

namespace {

double off_diagonal_norm(const ComplexMatrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (i != j) s += std::norm(b(i, j));
    return std::sqrt(s);
}

} // namespace

HermitianEig hermitian_eig(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols())
        throw NotHermitian("matrix is not square");
    if (a.empty())
        throw DimensionMismatch("eigendecomposition of empty matrix");
    if (hermiticity_defect(a) > tol)
        throw NotHermitian("asymmetry exceeds tolerance");

    const std::size_t n = a.rows();

    // Work on the hermitized copy so roundoff in the input cannot leak
    // imaginary parts onto the diagonal.
    ComplexMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            b(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, b.frobenius_norm());
    const double target = 1e-15 * scale;
    const int max_sweeps = 100;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(b) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx beta = b(p, q);
                const double absb = std::abs(beta);
                if (absb <= 1e-300) continue;
                const cplx u = beta / absb; // phase of the pivot

                const double alpha = b(p, p).real();
                const double gamma = b(q, q).real();
                const double tau = (alpha - gamma) / (2.0 * absb);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(tau * tau + 1.0));
                else
                    t = -1.0 / (-tau + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // B <- V^dagger B V with V the (p,q)-plane rotation
                // [[c, -s*u], [s*conj(u), c]].
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx bip = b(i, p), biq = b(i, q);
                    b(i, p) = c * bip + s * std::conj(u) * biq;
                    b(i, q) = -s * u * bip + c * biq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx bpj = b(p, j), bqj = b(q, j);
                    b(p, j) = c * bpj + s * u * bqj;
                    b(q, j) = -s * std::conj(u) * bpj + c * bqj;
                }
                b(p, q) = 0.0;
                b(q, p) = 0.0;
                b(p, p) = cplx(b(p, p).real(), 0.0);
                b(q, q) = cplx(b(q, q).real(), 0.0);

                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + s * std::conj(u) * viq;
                    v(i, q) = -s * u * vip + c * viq;
                }
            }
        }
    }
    if (sweep == max_sweeps && off_diagonal_norm(b) > target)
        throw NoConvergence("Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return b(i, i).real() < b(j, j).real();
    });

    HermitianEig out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = b(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i)
            out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

ComplexMatrix eig_reconstruct(const HermitianEig& e) {
    const std::size_t n = e.eigenvalues.size();
    ComplexMatrix scaled = e.eigenvectors;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            scaled(i, j) *= e.eigenvalues[j];
    return scaled * e.eigenvectors.adjoint();
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a) {
    HermitianEig e = hermitian_eig(a);
    for (double& lambda : e.eigenvalues) {
        if (lambda < -1e-10)
            throw NotPsd("negative eigenvalue beyond tolerance");
        lambda = lambda < 0.0 ? 0.0 : std::sqrt(lambda);
    }
    ComplexMatrix b = eig_reconstruct(e);
    // symmetrize away rotation roundoff
    const std::size_t n = b.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const cplx m = 0.5 * (b(i, j) + std::conj(b(j, i)));
            b(i, j) = m;
            b(j, i) = std::conj(m);
        }
    return b;
}

} // namespace vqt
