#include "vqt/reconstruction.hpp"

#include <algorithm>
#include <cmath>

#include "vqt/errors.hpp"
#include "vqt/linalg.hpp"

namespace vqt {

Aggregation aggregation_from_string(const std::string& s) {
    if (s == "top1") return Aggregation::Top1;
    if (s == "count_weighted") return Aggregation::CountWeighted;
    if (s == "boltzmann") return Aggregation::Boltzmann;
    throw ConfigError("unknown aggregation mode '" + s + "'");
}

std::string to_string(Aggregation a) {
    switch (a) {
        case Aggregation::Top1: return "top1";
        case Aggregation::CountWeighted: return "count_weighted";
        case Aggregation::Boltzmann: return "boltzmann";
    }
    return "top1";
}

std::string to_string(ReconstructionMethod m) {
    switch (m) {
        case ReconstructionMethod::Vqe: return "vqe";
        case ReconstructionMethod::BruteForce: return "brute-force";
        case ReconstructionMethod::LinearInversion: return "linear-inversion";
        case ReconstructionMethod::Mle: return "mle";
    }
    return "vqe";
}

namespace {

std::size_t side_of(std::size_t n_bits) {
    const auto d = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n_bits))));
    if (d * d != n_bits)
        throw DimensionMismatch("bitstring length is not a perfect square");
    return d;
}

GuessMatrix reshape_weights(const std::vector<double>& w, std::size_t d) {
    GuessMatrix g;
    g.matrix = ComplexMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            g.matrix(i, j) = w[i * d + j];
    return g;
}

} // namespace

GuessMatrix aggregate_bitstrings(const BitstringDistribution& dist, Aggregation mode,
                                 const IsingModel* model, const BoltzmannOptions& opts) {
    if (dist.counts.empty() || dist.total_shots <= 0)
        throw EmptyDistribution("empty bitstring distribution");
    const std::size_t n_bits = dist.counts.begin()->first.size();
    const std::size_t d = side_of(n_bits);

    std::vector<double> w(n_bits, 0.0);
    switch (mode) {
        case Aggregation::Top1: {
            const Bitstring b = modal_bitstring(dist);
            for (std::size_t i = 0; i < n_bits; ++i) w[i] = b[i];
            break;
        }
        case Aggregation::CountWeighted: {
            for (const auto& [bits, count] : dist.counts) {
                const double frac =
                    static_cast<double>(count) / static_cast<double>(dist.total_shots);
                for (std::size_t i = 0; i < n_bits; ++i) w[i] += frac * bits[i];
            }
            break;
        }
        case Aggregation::Boltzmann: {
            if (model == nullptr)
                throw MissingModel("boltzmann aggregation needs the Ising model");
            std::vector<std::pair<const Bitstring*, double>> energies;
            energies.reserve(dist.counts.size());
            double emin = std::numeric_limits<double>::infinity();
            for (const auto& [bits, count] : dist.counts) {
                const double e = energy_of_bitstring(bits, *model);
                energies.emplace_back(&bits, e);
                emin = std::min(emin, e);
            }
            double beta = opts.beta;
            if (!(beta > 0.0))
                beta = std::abs(emin) > 1e-12 ? 1.0 / std::abs(emin) : 1.0;
            double total = 0.0;
            for (const auto& [bits, e] : energies) {
                const double weight = std::exp(-beta * (e - emin));
                total += weight;
                for (std::size_t i = 0; i < n_bits; ++i) w[i] += weight * (*bits)[i];
            }
            for (double& v : w) v /= total;
            break;
        }
    }
    return reshape_weights(w, d);
}

DensityMatrix physical_projection(const GuessMatrix& p) {
    const ComplexMatrix ptp = p.matrix.adjoint() * p.matrix;
    const double tr = ptp.trace().real();
    if (!(tr > 1e-300))
        throw ZeroMatrix("guess matrix is identically zero");
    DensityMatrix rho;
    rho.dim = p.matrix.rows();
    rho.matrix = cplx{1.0 / tr, 0.0} * ptp;
    return rho;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim != sigma.dim)
        throw DimensionMismatch("fidelity of states with different dimensions");
    const ComplexMatrix root = matrix_sqrt_psd(rho.matrix);
    ComplexMatrix inner = root * sigma.matrix * root;
    // hermitize roundoff before taking eigenvalues
    for (std::size_t i = 0; i < inner.rows(); ++i)
        for (std::size_t j = i; j < inner.cols(); ++j) {
            const cplx m = 0.5 * (inner(i, j) + std::conj(inner(j, i)));
            inner(i, j) = m;
            inner(j, i) = std::conj(m);
        }
    const HermitianEig e = hermitian_eig(inner);
    // roundoff-scale eigenvalues must not leak sqrt-amplified noise into the
    // trace (sqrt(1e-16) = 1e-8 per mode)
    const double floor = 1e-13 * std::max(1.0, std::abs(e.eigenvalues.back()));
    double tr_sqrt = 0.0;
    for (double lambda : e.eigenvalues)
        if (lambda > floor) tr_sqrt += std::sqrt(lambda);
    const double f = tr_sqrt * tr_sqrt;
    if (f > 1.0 + 1e-9)
        throw NumericError("fidelity exceeds 1 beyond tolerance");
    return std::clamp(f, 0.0, 1.0);
}

DensityMatrix linear_inversion(const MeasurementMatrix& t_matrix,
                               const MeasurementVector& m) {
    const ComplexMatrix& t = t_matrix.t;
    if (t.rows() != m.m.size())
        throw DimensionMismatch("measurement vector length does not match T");
    const std::size_t n = t.cols();
    const std::size_t d = side_of(n);

    // normal equations through the Hermitian eigensolver: x = Q^+ T^dagger m
    const QuadraticForm qf = quadratic_form(t_matrix, m);
    const HermitianEig e = hermitian_eig(qf.q);
    const double thresh = 1e-10;
    for (double lambda : e.eigenvalues)
        if (std::sqrt(std::max(lambda, 0.0)) <= thresh)
            throw RankDeficient("measurement matrix has column rank below dim^2");

    std::vector<cplx> x(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            proj += std::conj(e.eigenvectors(i, k)) * qf.t[i];
        proj /= e.eigenvalues[k];
        for (std::size_t i = 0; i < n; ++i)
            x[i] += e.eigenvectors(i, k) * proj;
    }

    ComplexMatrix rho = unvec(x, d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            const cplx v = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = v;
            rho(j, i) = std::conj(v);
        }

    HermitianEig re = hermitian_eig(rho);
    double trace = 0.0;
    for (double& lambda : re.eigenvalues) {
        lambda = std::max(lambda, 0.0);
        trace += lambda;
    }
    if (!(trace > 1e-300))
        throw ZeroMatrix("linear inversion produced the zero state");
    for (double& lambda : re.eigenvalues) lambda /= trace;

    DensityMatrix out;
    out.dim = d;
    out.matrix = eig_reconstruct(re);
    return out;
}

MleResult mle_rhor(const MeasurementMatrix& t_matrix, const MeasurementVector& m,
                   std::size_t max_iters, double tol) {
    const ComplexMatrix& t = t_matrix.t;
    if (t.rows() != m.m.size())
        throw DimensionMismatch("measurement vector length does not match T");
    for (double mk : m.m)
        if (mk < 0.0)
            throw DataError("negative measurement value");
    const std::size_t n = t.cols();
    const std::size_t d = side_of(n);

    // recover the projectors from the stacked conj(vec(P_k)) rows
    std::vector<ComplexMatrix> projectors;
    projectors.reserve(t.rows());
    for (std::size_t k = 0; k < t.rows(); ++k) {
        std::vector<cplx> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = std::conj(t(k, j));
        projectors.push_back(unvec(row, d, d));
    }

    MleResult result;
    ComplexMatrix rho = cplx{1.0 / static_cast<double>(d), 0.0} * ComplexMatrix::identity(d);
    for (std::size_t it = 0; it < max_iters; ++it) {
        ComplexMatrix r(d, d);
        for (std::size_t k = 0; k < projectors.size(); ++k) {
            const double pr =
                std::max((projectors[k] * rho).trace().real(), 1e-12);
            r += cplx{m.m[k] / pr, 0.0} * projectors[k];
        }
        ComplexMatrix next = r * rho * r;
        const double trace = next.trace().real();
        if (!(trace > 1e-300))
            throw ZeroMatrix("MLE iteration collapsed to zero");
        next *= cplx{1.0 / trace, 0.0};

        result.iterations = it + 1;
        const double step = (next - rho).frobenius_norm();
        rho = std::move(next);
        if (step < tol) {
            result.converged = true;
            break;
        }
    }
    // clip roundoff-scale negatives so the result always validates
    HermitianEig e = hermitian_eig(rho);
    double trace = 0.0;
    for (double& lambda : e.eigenvalues) {
        lambda = std::max(lambda, 0.0);
        trace += lambda;
    }
    result.rho.dim = d;
    result.rho.matrix = cplx{1.0 / trace, 0.0} * eig_reconstruct(e);
    return result;
}

ReconstructionReport reconstruct(const BitstringDistribution& dist, Aggregation mode,
                                 const DensityMatrix& reference,
                                 ReconstructionMethod method, const IsingModel* model,
                                 const BoltzmannOptions& opts) {
    ReconstructionReport report;
    report.method = method;
    report.aggregation = mode;
    report.rho_hat = physical_projection(aggregate_bitstrings(dist, mode, model, opts));
    report.fidelity_vs_reference = fidelity(report.rho_hat, reference);
    return report;
}

} // namespace vqt
