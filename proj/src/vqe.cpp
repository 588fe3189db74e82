#include "vqt/vqe.hpp"

#include <cmath>
#include <random>

#include "vqt/errors.hpp"
#include "vqt/kernels.hpp"

namespace vqt {

namespace {

inline void apply_ry(std::array<cplx, 2>& q, double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const cplx a = q[0], b = q[1];
    q[0] = c * a - s * b;
    q[1] = s * a + c * b;
}

inline void apply_rz(std::array<cplx, 2>& q, double theta) {
    const cplx em = std::polar(1.0, -0.5 * theta);
    const cplx ep = std::polar(1.0, 0.5 * theta);
    q[0] *= em;
    q[1] *= ep;
}

} // namespace

ProductState prepare_state(const AnsatzSpec& spec, const ParameterVector& theta) {
    if (theta.size() != spec.parameter_count())
        throw LayoutMismatch("parameter vector length does not match the ansatz");
    ProductState state;
    state.qubits.assign(spec.n_qubits, {cplx{1.0, 0.0}, cplx{0.0, 0.0}});
    const std::size_t per_qubit = spec.depth * spec.gates_per_block();
    for (std::size_t j = 0; j < spec.n_qubits; ++j) {
        const double* p = theta.data() + j * per_qubit;
        auto& q = state.qubits[j];
        for (std::size_t layer = 0; layer < spec.depth; ++layer) {
            if (spec.family == AnsatzFamily::Ry) {
                apply_ry(q, p[layer]);
            } else {
                apply_rz(q, p[3 * layer]);
                apply_ry(q, p[3 * layer + 1]);
                apply_rz(q, p[3 * layer + 2]);
            }
        }
    }
    return state;
}

double expect_z(const ProductState& state, std::size_t j) {
    if (j >= state.n_qubits())
        throw IndexOutOfRange("qubit index out of range");
    return std::norm(state.qubits[j][0]) - std::norm(state.qubits[j][1]);
}

double energy_expectation(const AnsatzSpec& spec, const ParameterVector& theta,
                          const IsingModel& model, const EvalMode& mode) {
    if (spec.n_qubits != model.n)
        throw DimensionMismatch("ansatz qubit count does not match the model");
    if (mode.shots == 0) {
        const ProductState state = prepare_state(spec, theta);
        std::vector<double> z(model.n);
        for (std::size_t j = 0; j < model.n; ++j) z[j] = expect_z(state, j);
        return kernels::active().ising_energy(model.coupling.data(), model.field.data(),
                                              z.data(), model.n) +
               model.offset;
    }
    const BitstringDistribution dist = sample_bitstrings(spec, theta, mode.shots, mode.seed);
    double acc = 0.0;
    for (const auto& [bits, count] : dist.counts)
        acc += static_cast<double>(count) * energy_of_bitstring(bits, model);
    return acc / static_cast<double>(dist.total_shots);
}

BitstringDistribution sample_bitstrings(const AnsatzSpec& spec, const ParameterVector& theta,
                                        std::size_t shots, std::uint64_t seed) {
    if (shots == 0)
        throw DataError("shots must be >= 1");
    const ProductState state = prepare_state(spec, theta);
    std::vector<double> p_one(spec.n_qubits);
    for (std::size_t j = 0; j < spec.n_qubits; ++j)
        p_one[j] = std::norm(state.qubits[j][1]);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    BitstringDistribution dist;
    dist.total_shots = static_cast<long long>(shots);
    Bitstring b(spec.n_qubits);
    for (std::size_t s = 0; s < shots; ++s) {
        for (std::size_t j = 0; j < spec.n_qubits; ++j)
            b[j] = unit(rng) < p_one[j] ? 1 : 0;
        ++dist.counts[b];
    }
    return dist;
}

Bitstring modal_bitstring(const BitstringDistribution& dist) {
    if (dist.counts.empty())
        throw EmptyDistribution("empty bitstring distribution");
    const Bitstring* best = nullptr;
    long long best_count = -1;
    // map iteration is in ascending code order, so strict > keeps the
    // lowest code on ties
    for (const auto& [bits, count] : dist.counts) {
        if (count > best_count) {
            best_count = count;
            best = &bits;
        }
    }
    return *best;
}

} // namespace vqt
