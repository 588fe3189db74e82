// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma when the toolchain allows; VQT_KERNELS_AVX2 gates the body so
// the file is still valid in builds without those flags.

#include "vqt/kernels.hpp"

#if defined(VQT_KERNELS_AVX2) && (defined(__x86_64__) || defined(_M_X64))
#include <immintrin.h>

namespace vqt::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline double row_dot(const double* row, const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j), acc);
    double r = hsum(acc);
    for (; j < n; ++j) r += row[j] * x[j];
    return r;
}

double sym_quad_form_avx2(const double* a, const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i] * row_dot(a + i * n, x, n);
    return s;
}

double ising_energy_avx2(const double* coupling, const double* field,
                         const double* z, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += z[i] * (field[i] + 0.5 * row_dot(coupling + i * n, z, n));
    return s;
}

// Four codes per pass, lane-transposed spins: zlanes[j] holds spin j of all
// four candidates, so the coupling row broadcasts across lanes.
void bitstring_energies_avx2(const double* coupling, const double* field,
                             double offset, std::size_t n,
                             std::uint64_t first, std::size_t count,
                             double* out) {
    alignas(32) double zbuf[64 * 4];
    std::size_t c = 0;
    for (; c + 4 <= count; c += 4) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t shift = n - 1 - j;
            for (std::size_t lane = 0; lane < 4; ++lane) {
                const std::uint64_t code = first + c + lane;
                zbuf[4 * j + lane] = ((code >> shift) & 1u) ? -1.0 : 1.0;
            }
        }
        __m256d acc = _mm256_set1_pd(offset);
        const __m256d half = _mm256_set1_pd(0.5);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = coupling + i * n;
            __m256d r = _mm256_setzero_pd();
            for (std::size_t j = 0; j < n; ++j)
                r = _mm256_fmadd_pd(_mm256_set1_pd(row[j]),
                                    _mm256_load_pd(zbuf + 4 * j), r);
            const __m256d zi = _mm256_load_pd(zbuf + 4 * i);
            const __m256d term =
                _mm256_fmadd_pd(half, r, _mm256_set1_pd(field[i]));
            acc = _mm256_fmadd_pd(zi, term, acc);
        }
        _mm256_storeu_pd(out + c, acc);
    }
    if (c < count)
        scalar_ops().bitstring_energies(coupling, field, offset, n, first + c,
                                        count - c, out + c);
}

constexpr Ops kAvx2Ops = {
    "avx2",
    dot_avx2,
    sym_quad_form_avx2,
    ising_energy_avx2,
    bitstring_energies_avx2,
};

} // namespace

const Ops* avx2_ops_impl() {
#if defined(__GNUC__) || defined(__clang__)
    static const bool supported =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &kAvx2Ops : nullptr;
#else
    return &kAvx2Ops;
#endif
}

} // namespace vqt::kernels

#else

namespace vqt::kernels {
const Ops* avx2_ops_impl() { return nullptr; }
} // namespace vqt::kernels

#endif
