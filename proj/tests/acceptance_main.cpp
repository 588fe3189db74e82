// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fail. Expected values are pinned here from independent oracles (raw
// residual norms, exhaustive enumeration); tolerances are fixed in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "vqt/ising.hpp"
#include "vqt/linalg.hpp"
#include "vqt/optimize.hpp"
#include "vqt/pipeline.hpp"
#include "vqt/reconstruction.hpp"
#include "vqt/tomography.hpp"
#include "vqt/vqe.hpp"

using namespace vqt;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// ---- shared fixtures -------------------------------------------------------

struct BellInstance {
    BellKind kind;
    const char* name;
    IsingModel model;
    BruteForceResult oracle;
    Bitstring expected_minimizer;
};

BellInstance make_instance(BellKind kind, const char* name,
                           const std::vector<std::size_t>& ones) {
    BellInstance inst;
    inst.kind = kind;
    inst.name = name;
    const MeasurementVector m =
        forward_probabilities(bell_state(kind), two_qubit_projector_set());
    inst.model = build_ising_instance(measurement_matrix(two_qubit_projector_set()), m, 2.0);
    inst.expected_minimizer.assign(16, 0);
    for (std::size_t idx : ones) inst.expected_minimizer[idx] = 1;
    return inst;
}

// independent oracle: ||m - T p||^2 straight from the residual
double residual_cost(const ComplexMatrix& t, const std::vector<double>& m,
                     const Bitstring& bits) {
    double acc = 0.0;
    for (std::size_t k = 0; k < t.rows(); ++k) {
        cplx tp = 0.0;
        for (std::size_t j = 0; j < t.cols(); ++j)
            if (bits[j]) tp += t(k, j);
        acc += std::norm(m[k] - tp);
    }
    return acc;
}

// ---- criteria --------------------------------------------------------------

Outcome criterion1_mapping_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260809);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 7; // n in {2..8}
        const std::size_t rows = n + 3;
        MeasurementMatrix mm;
        mm.t = ComplexMatrix(rows, n);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < n; ++j)
                mm.t(i, j) = cplx(gauss(rng), gauss(rng));
        mm.projector_labels.assign(rows, "?");
        std::vector<double> m(rows);
        for (double& v : m) v = unit(rng);

        const IsingModel model = ising_coefficients(quadratic_form(mm, m));
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
            const Bitstring b = bitstring_from_code(code, n);
            const double gap =
                std::abs(energy_of_bitstring(b, model) - residual_cost(mm.t, m, b));
            worst = std::max(worst, gap);
        }
    }
    const double elapsed = seconds_since(t0);
    const bool pass = worst < 1e-9 && elapsed < 10.0;
    return {pass, fmt("max |H(b) - f(p(b))| = %.3g over 100 instances, %.2f s", worst,
                      elapsed)};
}

Outcome criterion2_oracle_patterns(std::vector<BellInstance>& instances) {
    std::string detail;
    bool pass = true;
    for (BellInstance& inst : instances) {
        const auto t0 = std::chrono::steady_clock::now();
        inst.oracle = brute_force_minimum(inst.model);
        const double elapsed = seconds_since(t0);
        const bool match = inst.oracle.minimizer == inst.expected_minimizer;
        pass = pass && match && elapsed < 5.0;
        if (!detail.empty()) detail += "; ";
        detail += fmt("%s -> %s (E=%.3g, %.2f s)", inst.name,
                      match ? "expected pattern" : bitstring_to_string(inst.oracle.minimizer).c_str(),
                      inst.oracle.energy, elapsed);
    }
    return {pass, detail};
}

struct VqeRun {
    std::uint64_t seed;
    OptimizeResult result;
    Bitstring modal;
    bool hit = false;
};

Outcome criterion3_vqe_reaches_oracle(const std::vector<BellInstance>& instances,
                                      std::vector<std::vector<VqeRun>>& all_runs) {
    std::string detail;
    bool pass = true;
    const AnsatzSpec spec{AnsatzFamily::Ry, 1, 16};
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const BellInstance& inst = instances[i];
        const auto t0 = std::chrono::steady_clock::now();
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            VqeRun run;
            run.seed = seed;
            OptimizerConfig cfg; // defaults: nelder-mead-multistart, budget 5000
            cfg.seed = seed;
            run.result = optimize(inst.model, spec, cfg);
            run.modal = modal_bitstring(
                sample_bitstrings(spec, run.result.theta, 4096, seed * 77 + 1));
            run.hit = std::abs(run.result.energy - inst.oracle.energy) <= 1e-3 &&
                      run.modal == inst.oracle.minimizer;
            hits += run.hit ? 1 : 0;
            all_runs[i].push_back(std::move(run));
        }
        const double elapsed = seconds_since(t0);
        pass = pass && hits >= 9 && elapsed < 60.0;
        if (!detail.empty()) detail += "; ";
        detail += fmt("%s: %d/10 seeds, %.1f s", inst.name, hits, elapsed);
    }
    return {pass, detail};
}

Outcome criterion4_fidelity_targets(const std::vector<BellInstance>& instances,
                                    const std::vector<std::vector<VqeRun>>& all_runs) {
    std::string detail;
    bool pass = true;

    // noiseless: every converged criterion-3 run reconstructs at F >= 0.999
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const DensityMatrix truth = bell_state(instances[i].kind);
        double worst = 1.0;
        int used = 0;
        for (const VqeRun& run : all_runs[i]) {
            if (!run.hit) continue;
            BitstringDistribution dist;
            dist.counts[run.modal] = 1;
            dist.total_shots = 1;
            const ReconstructionReport report =
                reconstruct(dist, Aggregation::Top1, truth, ReconstructionMethod::Vqe);
            worst = std::min(worst, report.fidelity_vs_reference);
            ++used;
        }
        pass = pass && used > 0 && worst >= 0.999;
        if (!detail.empty()) detail += "; ";
        detail += fmt("noiseless %s: min F = %.6f over %d runs", instances[i].name, worst,
                      used);
    }

    // Poisson noise, mean 1e3 per group, full VQE path, 20 seeds
    std::vector<double> fidelities;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RunConfig cfg;
        cfg.state = BellKind::Correlated;
        cfg.noise_mean = 1e3;
        cfg.seed = seed;
        cfg.optimizer.seed = seed;
        const ReconstructionReport report = run_end_to_end(cfg);
        fidelities.push_back(report.fidelity_vs_reference);
    }
    std::sort(fidelities.begin(), fidelities.end());
    const double median = 0.5 * (fidelities[9] + fidelities[10]);
    pass = pass && median >= 0.95;
    detail += fmt("; noisy mean=1e3: median F = %.4f over 20 seeds", median);
    return {pass, detail};
}

Outcome criterion5_variational_bound(const std::vector<BellInstance>& instances,
                                     const std::vector<std::vector<VqeRun>>& all_runs) {
    double worst_violation = -std::numeric_limits<double>::infinity();
    std::size_t points = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (const VqeRun& run : all_runs[i]) {
            for (const TracePoint& p : run.result.trace) {
                worst_violation =
                    std::max(worst_violation, instances[i].oracle.energy - p.energy);
                ++points;
            }
        }
    }
    const bool pass = worst_violation <= 1e-9;
    return {pass, fmt("max (oracle - E) = %.3g over %zu evaluations", worst_violation,
                      points)};
}

Outcome criterion6_ansatz_equivalence(const std::vector<BellInstance>& instances,
                                      const std::vector<std::vector<VqeRun>>& all_runs) {
    std::string detail;
    bool pass = true;

    // <Z> invariance under a trailing R_z
    double worst_z = 0.0;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> angle(-6.0, 6.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double ry = angle(rng), tail = angle(rng);
        const AnsatzSpec euler{AnsatzFamily::RzRyRz, 1, 1};
        const ProductState a = prepare_state(euler, {0.0, ry, tail});
        const ProductState b = prepare_state({AnsatzFamily::Ry, 1, 1}, {ry});
        worst_z = std::max(worst_z, std::abs(expect_z(a, 0) - expect_z(b, 0)));
    }
    pass = pass && worst_z <= 1e-12;
    detail += fmt("trailing-Rz <Z> deviation %.2g", worst_z);

    // depth-3 ry agrees with depth-1 ry per seed (angle additivity)
    const AnsatzSpec deep{AnsatzFamily::Ry, 3, 16};
    for (std::size_t i = 0; i < instances.size(); ++i) {
        int agree = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            OptimizerConfig cfg;
            cfg.seed = seed;
            cfg.budget = 150000; // 48 parameters need a longer search
            cfg.restarts = 12;
            const OptimizeResult d3 = optimize(instances[i].model, deep, cfg);
            const double d1 = all_runs[i][seed - 1].result.energy;
            if (std::abs(d3.energy - d1) <= 1e-3) ++agree;
        }
        pass = pass && agree >= 9;
        detail += fmt("; %s depth-3 vs depth-1: %d/10 within 1e-3", instances[i].name, agree);
    }
    return {pass, detail};
}

Outcome criterion7_baselines() {
    const MeasurementMatrix mm = measurement_matrix(two_qubit_projector_set());
    std::string detail;
    bool pass = true;

    for (BellKind kind : {BellKind::Correlated, BellKind::AntiCorrelated}) {
        const DensityMatrix truth = bell_state(kind);
        const MeasurementVector exact = forward_probabilities(truth, two_qubit_projector_set());
        const double f_li = fidelity(linear_inversion(mm, exact), truth);
        const double f_mle = fidelity(mle_rhor(mm, exact).rho, truth);
        pass = pass && f_li >= 0.999 && f_mle >= 0.999;
        if (!detail.empty()) detail += "; ";
        detail += fmt("noiseless %s: LI %.6f, MLE %.6f",
                      kind == BellKind::Correlated ? "phi+" : "psi+", f_li, f_mle);
    }

    const DensityMatrix truth = bell_state(BellKind::Correlated);
    const MeasurementVector exact = forward_probabilities(truth, two_qubit_projector_set());
    std::vector<double> f_li, f_mle;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const MeasurementVector noisy = normalize_counts(
            simulate_counts(exact, 1e4, seed), MeasurementSource::SyntheticNoisy);
        f_li.push_back(fidelity(linear_inversion(mm, noisy), truth));
        f_mle.push_back(fidelity(mle_rhor(mm, noisy).rho, truth));
    }
    std::sort(f_li.begin(), f_li.end());
    std::sort(f_mle.begin(), f_mle.end());
    const double med_li = 0.5 * (f_li[9] + f_li[10]);
    const double med_mle = 0.5 * (f_mle[9] + f_mle[10]);
    pass = pass && med_li >= 0.99 && med_mle >= 0.99;
    detail += fmt("; noisy mean=1e4 medians: LI %.4f, MLE %.4f", med_li, med_mle);
    return {pass, detail};
}

Outcome criterion8_substitute_check(bool c3_pass, bool c5_pass) {
    const bool pass = c3_pass && c5_pass;
    return {pass,
            "absolute cost values from the source experiment depend on an unspecified "
            "count normalization and are not reproduced; substitute check (E_final vs "
            "brute-force oracle, criteria 3 and 5) " +
                std::string(pass ? "passed" : "FAILED")};
}

} // namespace

int main() {
    std::vector<BellInstance> instances;
    instances.push_back(make_instance(BellKind::Correlated, "phi+", {0, 3, 12, 15}));
    instances.push_back(make_instance(BellKind::AntiCorrelated, "psi+", {5, 6, 9, 10}));
    std::vector<std::vector<VqeRun>> runs(instances.size());

    int failures = 0;
    auto report = [&failures](int index, const char* title, const Outcome& o) {
        std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", index, title,
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
        return o.pass;
    };

    report(1, "mapping identity", criterion1_mapping_identity());
    report(2, "brute-force oracle patterns", criterion2_oracle_patterns(instances));
    const bool c3 =
        report(3, "vqe reaches the oracle", criterion3_vqe_reaches_oracle(instances, runs));
    report(4, "fidelity targets", criterion4_fidelity_targets(instances, runs));
    const bool c5 =
        report(5, "variational bound", criterion5_variational_bound(instances, runs));
    report(6, "ansatz equivalences", criterion6_ansatz_equivalence(instances, runs));
    report(7, "classical baselines", criterion7_baselines());
    report(8, "absolute cost values declared non-reproducible",
           criterion8_substitute_check(c3, c5));

    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
