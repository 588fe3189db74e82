#include <doctest.h>

#include <cmath>
#include <random>

#include "test_utils.hpp"
#include "vqt/errors.hpp"
#include "vqt/linalg.hpp"
#include "vqt/tomography.hpp"

using namespace vqt;
using testing::random_density;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("single-qubit projectors match the Bloch-sphere states") {
    const ProjectorSet ps = single_qubit_projectors();
    REQUIRE(ps.size() == 6);
    CHECK(ps.labels == std::vector<std::string>{"z+", "z-", "x+", "x-", "y+", "y-"});

    CHECK(max_abs_diff(ps.projectors[0], ComplexMatrix{{1, 0}, {0, 0}}) < 1e-15);
    CHECK(max_abs_diff(ps.projectors[2], ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}) < 1e-15);
    CHECK(max_abs_diff(ps.projectors[4],
                       ComplexMatrix{{0.5, -0.5 * I}, {0.5 * I, 0.5}}) < 1e-15);

    // each basis resolves the identity exactly
    for (std::size_t axis = 0; axis < 3; ++axis) {
        const ComplexMatrix sum = ps.projectors[2 * axis] + ps.projectors[2 * axis + 1];
        CHECK(max_abs_diff(sum, ComplexMatrix::identity(2)) == 0.0);
    }
}

TEST_CASE("the joint set has 36 idempotent rank-1 projectors in fixed order") {
    const ProjectorSet ps = two_qubit_projector_set();
    REQUIRE(ps.size() == 36);
    CHECK(ps.labels[0] == "z+z+");
    CHECK(ps.labels[1] == "z+z-");
    CHECK(ps.labels[6] == "z-z+");
    CHECK(ps.labels[35] == "y-y-");

    ComplexMatrix e0(4, 4);
    e0(0, 0) = 1.0;
    CHECK(max_abs_diff(ps.projectors[0], e0) < 1e-15);

    for (const ComplexMatrix& p : ps.projectors) {
        CHECK(hermiticity_defect(p) < 1e-12);
        CHECK(max_abs_diff(p * p, p) < 1e-12);
        CHECK(std::abs(p.trace() - cplx{1.0, 0.0}) < 1e-12);
    }
}

TEST_CASE("measurement matrix reproduces traces and has full rank") {
    const ProjectorSet ps = two_qubit_projector_set();
    const MeasurementMatrix mm = measurement_matrix(ps);
    REQUIRE(mm.t.rows() == 36);
    REQUIRE(mm.t.cols() == 16);

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = random_density(rng, 4);
        const auto v = vec(rho.matrix);
        for (std::size_t k = 0; k < 36; ++k) {
            cplx lhs = 0.0;
            for (std::size_t j = 0; j < 16; ++j) lhs += mm.t(k, j) * v[j];
            const cplx rhs = (ps.projectors[k] * rho.matrix).trace();
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }

    // rank via singular values = sqrt of eigenvalues of T^dagger T
    const ComplexMatrix q = mm.t.adjoint() * mm.t;
    const HermitianEig e = hermitian_eig(q);
    std::size_t rank = 0;
    for (double lambda : e.eigenvalues)
        if (std::sqrt(std::max(lambda, 0.0)) > 1e-10) ++rank;
    CHECK(rank == 16);
}

TEST_CASE("measurement matrix rejects ragged projector sets") {
    ProjectorSet ps;
    ps.projectors = {ComplexMatrix::identity(2), ComplexMatrix::identity(4)};
    ps.labels = {"a", "b"};
    CHECK_THROWS_AS(measurement_matrix(ps), DimensionMismatch);
}

TEST_CASE("bell states have the textbook entries") {
    const DensityMatrix phi = bell_state(BellKind::Correlated);
    ComplexMatrix expected(4, 4);
    expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
    CHECK(max_abs_diff(phi.matrix, expected) < 1e-15);

    const DensityMatrix psi = bell_state(BellKind::AntiCorrelated);
    ComplexMatrix expected2(4, 4);
    expected2(1, 1) = expected2(1, 2) = expected2(2, 1) = expected2(2, 2) = 0.5;
    CHECK(max_abs_diff(psi.matrix, expected2) < 1e-15);

    for (const DensityMatrix& rho : {phi, psi, bell_state(BellKind::Correlated,
                                                          std::make_pair(0.3, 0.9))}) {
        rho.validate();
        CHECK(std::abs(rho.matrix.trace() - cplx{1.0, 0.0}) < 1e-12);
        const double purity = (rho.matrix * rho.matrix).trace().real();
        CHECK(purity == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("invalid bell weights are rejected") {
    CHECK_THROWS_AS(bell_state(BellKind::Correlated, std::make_pair(-1.0, 1.0)),
                    InvalidWeights);
    CHECK_THROWS_AS(bell_state(BellKind::Correlated, std::make_pair(0.0, 0.0)),
                    InvalidWeights);
}

TEST_CASE("forward probabilities follow the Born rule on Bell states") {
    const ProjectorSet ps = two_qubit_projector_set();
    const DensityMatrix phi = bell_state(BellKind::Correlated);
    const MeasurementVector mv = forward_probabilities(phi, ps);
    REQUIRE(mv.m.size() == 36);
    CHECK(mv.source == MeasurementSource::SyntheticExact);

    const auto labels = joint_labels();
    auto at = [&](const std::string& label) {
        for (std::size_t k = 0; k < labels.size(); ++k)
            if (labels[k] == label) return mv.m[k];
        FAIL("label not found");
        return 0.0;
    };
    CHECK(at("z+z+") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(at("z+z-") == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(at("x+x+") == doctest::Approx(0.5).epsilon(1e-12));

    for (const auto& group : basis_pair_groups()) {
        double sum = 0.0;
        for (std::size_t k : group) sum += mv.m[k];
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("count simulation is deterministic and respects zero rates") {
    const DensityMatrix phi = bell_state(BellKind::Correlated);
    const MeasurementVector mv = forward_probabilities(phi, two_qubit_projector_set());
    const CountRecord a = simulate_counts(mv, 1000.0, 42);
    const CountRecord b = simulate_counts(mv, 1000.0, 42);
    CHECK(a == b);
    for (std::size_t k = 0; k < mv.m.size(); ++k)
        if (mv.m[k] == 0.0) CHECK(a.counts[k] == 0);

    CHECK_THROWS_AS(simulate_counts(mv, 0.0, 1), InvalidFlux);
    CHECK_THROWS_AS(simulate_counts(mv, -5.0, 1), InvalidFlux);
}

TEST_CASE("count simulation concentrates at the 3-sigma Poisson scale") {
    const DensityMatrix phi = bell_state(BellKind::Correlated);
    const MeasurementVector mv = forward_probabilities(phi, two_qubit_projector_set());
    const double mean = 1e6;
    const CountRecord rec = simulate_counts(mv, mean, 7);
    // z+z+ has probability 0.5; 3 sigma of Poisson(5e5) is ~0.0021e6
    const double ratio = static_cast<double>(rec.counts[0]) / mean;
    CHECK(ratio > 0.497);
    CHECK(ratio < 0.503);
}

TEST_CASE("normalization works per basis-pair group") {
    CountRecord rec;
    rec.labels = joint_labels();
    rec.counts.assign(36, 0);
    // groups are interleaved: (z,z) occupies indices {0,1,6,7}
    rec.counts[0] = 500;
    rec.counts[1] = 0;
    rec.counts[6] = 0;
    rec.counts[7] = 500;
    for (const auto& group : basis_pair_groups()) {
        const bool is_zz = group[0] == 0;
        if (!is_zz)
            for (std::size_t k : group) rec.counts[k] = 250;
    }
    const MeasurementVector mv = normalize_counts(rec);
    CHECK(mv.m[0] == doctest::Approx(0.5));
    CHECK(mv.m[1] == doctest::Approx(0.0));
    CHECK(mv.m[7] == doctest::Approx(0.5));
    CHECK(mv.m[2] == doctest::Approx(0.25));

    rec.counts[0] = rec.counts[1] = rec.counts[6] = rec.counts[7] = 0;
    CHECK_THROWS_AS(normalize_counts(rec), EmptyGroup);
}

TEST_CASE("normalized simulated counts converge to the exact probabilities") {
    const DensityMatrix phi = bell_state(BellKind::Correlated, std::make_pair(0.8, 0.6));
    const MeasurementVector exact = forward_probabilities(phi, two_qubit_projector_set());
    const double mean = 1e6;
    const MeasurementVector noisy =
        normalize_counts(simulate_counts(exact, mean, 19), MeasurementSource::SyntheticNoisy);
    for (std::size_t k = 0; k < 36; ++k) {
        const double sigma = std::sqrt(std::max(exact.m[k] * (1.0 - exact.m[k]), 1e-9) / mean);
        CHECK(std::abs(noisy.m[k] - exact.m[k]) < 3.0 * sigma + 1e-5);
    }
}
