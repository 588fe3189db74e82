#include "vqt/kernels.hpp"

#include <atomic>
#include <cstring>

namespace vqt::kernels {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sym_quad_form_scalar(const double* a, const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = a + i * n;
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j) r += row[j] * x[j];
        s += x[i] * r;
    }
    return s;
}

double ising_energy_scalar(const double* coupling, const double* field,
                           const double* z, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = coupling + i * n;
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j) r += row[j] * z[j];
        s += z[i] * (field[i] + 0.5 * r);
    }
    return s;
}

void bitstring_energies_scalar(const double* coupling, const double* field,
                               double offset, std::size_t n,
                               std::uint64_t first, std::size_t count,
                               double* out) {
    double z[64];
    for (std::size_t c = 0; c < count; ++c) {
        const std::uint64_t code = first + c;
        for (std::size_t j = 0; j < n; ++j)
            z[j] = ((code >> (n - 1 - j)) & 1u) ? -1.0 : 1.0;
        out[c] = ising_energy_scalar(coupling, field, z, n) + offset;
    }
}

constexpr Ops kScalarOps = {
    "scalar",
    dot_scalar,
    sym_quad_form_scalar,
    ising_energy_scalar,
    bitstring_energies_scalar,
};

std::atomic<const Ops*> g_forced{nullptr};

} // namespace

const Ops& scalar_ops() { return kScalarOps; }

// defined in kernels_avx2.cpp; returns nullptr without compile or CPU support
const Ops* avx2_ops_impl();

const Ops* avx2_ops() { return avx2_ops_impl(); }

const Ops& active() {
    if (const Ops* forced = g_forced.load(std::memory_order_relaxed))
        return *forced;
    static const Ops* selected = [] {
        if (const Ops* v = avx2_ops_impl()) return v;
        return &kScalarOps;
    }();
    return *selected;
}

bool force_backend(const char* name) {
    if (name == nullptr) {
        g_forced.store(nullptr, std::memory_order_relaxed);
        return true;
    }
    if (std::strcmp(name, "scalar") == 0) {
        g_forced.store(&kScalarOps, std::memory_order_relaxed);
        return true;
    }
    if (std::strcmp(name, "avx2") == 0) {
        if (const Ops* v = avx2_ops_impl()) {
            g_forced.store(v, std::memory_order_relaxed);
            return true;
        }
        return false;
    }
    return false;
}

} // namespace vqt::kernels
