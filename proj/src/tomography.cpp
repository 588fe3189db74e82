#include "vqt/tomography.hpp"

#include <cmath>
#include <random>

#include "vqt/errors.hpp"
#include "vqt/linalg.hpp"

namespace vqt {

void DensityMatrix::validate() const {
    if (matrix.rows() != dim || matrix.cols() != dim)
        throw DimensionMismatch("density matrix shape does not match dim");
    if (!matrix.all_finite())
        throw NumericError("density matrix has non-finite entries");
    if (hermiticity_defect(matrix) > 1e-10)
        throw NotHermitian("density matrix is not Hermitian");
    if (std::abs(matrix.trace() - cplx{1.0, 0.0}) > 1e-10)
        throw NumericError("density matrix trace is not 1");
    const HermitianEig e = hermitian_eig(matrix);
    for (double lambda : e.eigenvalues)
        if (lambda < -1e-10)
            throw NotPsd("density matrix has a negative eigenvalue");
}

const std::vector<std::string>& setting_labels() {
    static const std::vector<std::string> labels = {"z+", "z-", "x+", "x-", "y+", "y-"};
    return labels;
}

std::vector<std::string> joint_labels() {
    std::vector<std::string> out;
    out.reserve(36);
    for (const auto& a : setting_labels())
        for (const auto& b : setting_labels())
            out.push_back(a + b);
    return out;
}

const std::vector<std::vector<std::size_t>>& basis_pair_groups() {
    static const std::vector<std::vector<std::size_t>> groups = [] {
        std::vector<std::vector<std::size_t>> g;
        for (std::size_t axis_a = 0; axis_a < 3; ++axis_a)
            for (std::size_t axis_b = 0; axis_b < 3; ++axis_b) {
                std::vector<std::size_t> members;
                for (std::size_t sa = 0; sa < 2; ++sa)
                    for (std::size_t sb = 0; sb < 2; ++sb)
                        members.push_back(6 * (2 * axis_a + sa) + 2 * axis_b + sb);
                g.push_back(std::move(members));
            }
        return g;
    }();
    return groups;
}

ProjectorSet single_qubit_projectors() {
    // entries written out exactly so each basis resolves the identity with
    // zero roundoff
    const cplx i{0.0, 1.0};
    ProjectorSet ps;
    ps.projectors = {
        ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},            // z+ : |0><0|
        ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}},            // z- : |1><1|
        ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}},            // x+ : |+><+|
        ComplexMatrix{{0.5, -0.5}, {-0.5, 0.5}},          // x- : |-><-|
        ComplexMatrix{{0.5, -0.5 * i}, {0.5 * i, 0.5}},   // y+ : |+i><+i|
        ComplexMatrix{{0.5, 0.5 * i}, {-0.5 * i, 0.5}},   // y- : |-i><-i|
    };
    ps.labels = setting_labels();
    return ps;
}

ProjectorSet two_qubit_projector_set() {
    const ProjectorSet single = single_qubit_projectors();
    ProjectorSet out;
    out.projectors.reserve(36);
    out.labels.reserve(36);
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            out.projectors.push_back(kron(single.projectors[a], single.projectors[b]));
            out.labels.push_back(single.labels[a] + single.labels[b]);
        }
    return out;
}

MeasurementMatrix measurement_matrix(const ProjectorSet& ps) {
    if (ps.projectors.empty())
        throw DimensionMismatch("empty projector set");
    const std::size_t dim = ps.projectors.front().rows();
    const std::size_t n = dim * dim;
    MeasurementMatrix mm;
    mm.t = ComplexMatrix(ps.size(), n);
    mm.projector_labels = ps.labels;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const ComplexMatrix& p = ps.projectors[k];
        if (p.rows() != dim || p.cols() != dim)
            throw DimensionMismatch("projector dimensions differ within set");
        const auto v = vec(p);
        for (std::size_t j = 0; j < n; ++j)
            mm.t(k, j) = std::conj(v[j]);
    }
    return mm;
}

DensityMatrix bell_state(BellKind kind, std::optional<std::pair<double, double>> weights) {
    double w0 = 1.0, w1 = 1.0;
    if (weights) {
        w0 = weights->first;
        w1 = weights->second;
        if (w0 < 0.0 || w1 < 0.0 || (w0 == 0.0 && w1 == 0.0))
            throw InvalidWeights("bell weights must be nonnegative and not both zero");
    }
    const double norm = std::sqrt(w0 * w0 + w1 * w1);
    w0 /= norm;
    w1 /= norm;

    std::vector<cplx> psi(4, 0.0);
    if (kind == BellKind::Correlated) {
        psi[0] = w0; // |00>
        psi[3] = w1; // |11>
    } else {
        psi[1] = w0; // |01>
        psi[2] = w1; // |10>
    }
    DensityMatrix rho;
    rho.dim = 4;
    rho.matrix = ComplexMatrix(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            rho.matrix(i, j) = psi[i] * std::conj(psi[j]);
    return rho;
}

MeasurementVector forward_probabilities(const DensityMatrix& rho, const ProjectorSet& ps) {
    MeasurementVector mv;
    mv.source = MeasurementSource::SyntheticExact;
    mv.m.reserve(ps.size());
    for (const ComplexMatrix& p : ps.projectors) {
        if (p.rows() != rho.matrix.rows())
            throw DimensionMismatch("projector and state dimensions differ");
        mv.m.push_back((p * rho.matrix).trace().real());
    }
    return mv;
}

CountRecord simulate_counts(const MeasurementVector& m, double mean_counts_per_group,
                            std::uint64_t seed) {
    if (!(mean_counts_per_group > 0.0))
        throw InvalidFlux("mean counts per group must be positive");
    std::mt19937_64 rng(seed);
    CountRecord rec;
    rec.labels = joint_labels();
    if (m.m.size() != rec.labels.size())
        throw DimensionMismatch("measurement vector length is not 36");
    rec.counts.reserve(m.m.size());
    for (double mk : m.m) {
        const double rate = mean_counts_per_group * mk;
        if (rate <= 0.0) {
            rec.counts.push_back(0);
        } else {
            std::poisson_distribution<long long> poisson(rate);
            rec.counts.push_back(poisson(rng));
        }
    }
    return rec;
}

MeasurementVector normalize_counts(const CountRecord& c, MeasurementSource source) {
    MeasurementVector mv;
    mv.source = source;
    mv.m.assign(c.counts.size(), 0.0);
    for (long long v : c.counts)
        if (v < 0)
            throw DataError("negative count");
    for (const auto& group : basis_pair_groups()) {
        long long sum = 0;
        for (std::size_t k : group) {
            if (k >= c.counts.size())
                throw DimensionMismatch("count record is shorter than the 36-setting layout");
            sum += c.counts[k];
        }
        if (sum == 0)
            throw EmptyGroup("basis-pair group has zero total counts");
        for (std::size_t k : group)
            mv.m[k] = static_cast<double>(c.counts[k]) / static_cast<double>(sum);
    }
    return mv;
}

} // namespace vqt
