// Data-parallel arithmetic kernels behind the hot loops: Ising energy
// evaluation (optimizer inner loop, brute-force enumeration) and dense
// quadratic forms. A scalar reference implementation always exists; an AVX2
// variant is compiled when the toolchain supports it and selected at runtime
// when the CPU does. Both variants are equivalence-tested against each other.

#pragma once

#include <cstddef>
#include <cstdint>

namespace vqt::kernels {

struct Ops {
    const char* name;

    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);

    // x^T A x with A an n-by-n row-major symmetric matrix
    double (*sym_quad_form)(const double* a, const double* x, std::size_t n);

    // 0.5 * z^T C z + f . z with C symmetric, zero diagonal; the Ising
    // pair/field contraction shared by analytic expectation values and
    // bitstring energies
    double (*ising_energy)(const double* coupling, const double* field,
                           const double* z, std::size_t n);

    // energies of `count` consecutive bitstring codes starting at `first`;
    // bit j of a code (MSB-first over n bits) maps to spin z_j = 1 - 2*bit.
    // n must stay within the enumeration range (n <= 64).
    void (*bitstring_energies)(const double* coupling, const double* field,
                               double offset, std::size_t n,
                               std::uint64_t first, std::size_t count,
                               double* out);
};

// Active backend: AVX2 when compiled in and supported by this CPU, else scalar.
const Ops& active();

const Ops& scalar_ops();

// nullptr when AVX2 support is absent (compile-time or runtime).
const Ops* avx2_ops();

// Force a backend by name ("scalar", "avx2") for testing; nullptr resets to
// automatic selection. Returns false if the backend is unavailable.
bool force_backend(const char* name);

} // namespace vqt::kernels
