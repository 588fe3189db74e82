// Measurement model for two-photon tomography in a two-dimensional OAM
// subspace: Pauli-eigenstate projectors per photon, the 36 joint projectors,
// the stacked measurement matrix, Born-rule forward probabilities, and
// Poisson count simulation with per-basis-group normalization.
//
// Logical mapping: |l> -> |0>, |-l> -> |1>. Single-photon settings are
// ordered (z+, z-, x+, x-, y+, y-); joint setting k = 6*a + b with photon A
// outer and photon B inner.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqt/complex_matrix.hpp"

namespace vqt {

struct DensityMatrix {
    std::size_t dim = 0;
    ComplexMatrix matrix;

    // Hermitian within 1e-10, unit trace within 1e-10, eigenvalues >= -1e-10.
    void validate() const;
};

struct ProjectorSet {
    std::vector<ComplexMatrix> projectors;
    std::vector<std::string> labels;

    std::size_t size() const { return projectors.size(); }
};

struct MeasurementMatrix {
    ComplexMatrix t; // K x dim^2, row k = conj(vec(P_k))
    std::vector<std::string> projector_labels;
};

enum class MeasurementSource { SyntheticExact, SyntheticNoisy, Ingested };

struct MeasurementVector {
    std::vector<double> m;
    MeasurementSource source = MeasurementSource::SyntheticExact;
};

struct CountRecord {
    std::vector<long long> counts;
    std::vector<std::string> labels;
    std::string metadata; // free-form text

    bool operator==(const CountRecord&) const = default;
};

enum class BellKind { Correlated, AntiCorrelated };

// The six single-photon setting labels in canonical order.
const std::vector<std::string>& setting_labels();

// Labels of the 36 joint settings in canonical order ("z+z+", "z+z-", ...).
std::vector<std::string> joint_labels();

// Index groups of the 9 basis pairs (both photons' Pauli axes fixed, signs
// varying); each group's four outcomes form one complete measurement.
const std::vector<std::vector<std::size_t>>& basis_pair_groups();

// Projectors onto |0>, |1>, |+>, |->, |+i>, |-i> in canonical order.
ProjectorSet single_qubit_projectors();

// All 36 tensor-product projectors, photon A outer / photon B inner.
ProjectorSet two_qubit_projector_set();

// Stacks conj(vec(P_k)) as rows so that t * vec(rho) yields tr(P_k rho).
MeasurementMatrix measurement_matrix(const ProjectorSet& ps);

// (|00>+|11>)/sqrt(2) or (|01>+|10>)/sqrt(2), with optional nonnegative
// amplitude weights (normalized internally).
DensityMatrix bell_state(BellKind kind,
                         std::optional<std::pair<double, double>> weights = std::nullopt);

// Exact Born-rule probabilities m_k = Re tr(P_k rho).
MeasurementVector forward_probabilities(const DensityMatrix& rho, const ProjectorSet& ps);

// counts[k] ~ Poisson(mean_counts_per_group * m[k]); deterministic per seed.
CountRecord simulate_counts(const MeasurementVector& m, double mean_counts_per_group,
                            std::uint64_t seed);

// Divides each basis-pair group of four counts by its sum.
MeasurementVector normalize_counts(const CountRecord& c,
                                   MeasurementSource source = MeasurementSource::Ingested);

} // namespace vqt
