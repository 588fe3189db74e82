#include "vqt/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "vqt/errors.hpp"

namespace vqt {

OptMethod opt_method_from_string(const std::string& s) {
    if (s == "nelder-mead-multistart" || s == "nelder-mead") return OptMethod::NelderMeadMultistart;
    if (s == "spsa") return OptMethod::Spsa;
    throw ConfigError("unknown optimizer method '" + s + "'");
}

std::string to_string(OptMethod m) {
    return m == OptMethod::NelderMeadMultistart ? "nelder-mead-multistart" : "spsa";
}

void OptimizerConfig::validate() const {
    if (budget < 1)
        throw ConfigError("optimizer budget must be >= 1");
    if (restarts < 1)
        throw ConfigError("optimizer restarts must be >= 1");
    if (!(tolerance > 0.0))
        throw ConfigError("optimizer tolerance must be positive");
}

namespace {

constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Wraps the energy objective with trace recording and the global best.
class TracedObjective {
public:
    TracedObjective(const IsingModel& model, const AnsatzSpec& spec,
                    const OptimizerConfig& config)
        : model_(model), spec_(spec), config_(config),
          start_(std::chrono::steady_clock::now()) {}

    double operator()(const ParameterVector& theta) {
        EvalMode mode = config_.shots == 0
                            ? EvalMode::analytic()
                            : EvalMode::sampled(config_.shots,
                                                mix64(config_.seed ^ (evaluations_ + 1)));
        const double e = energy_expectation(spec_, theta, model_, mode);
        ++evaluations_;
        if (e < best_energy_) {
            best_energy_ = e;
            best_theta_ = theta;
        }
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start_)
                              .count();
        trace_.push_back({evaluations_, e, best_energy_, ms});
        return e;
    }

    std::size_t evaluations() const { return evaluations_; }
    double best_energy() const { return best_energy_; }
    const ParameterVector& best_theta() const { return best_theta_; }
    ConvergenceTrace take_trace() { return std::move(trace_); }

private:
    const IsingModel& model_;
    const AnsatzSpec& spec_;
    const OptimizerConfig& config_;
    std::chrono::steady_clock::time_point start_;
    std::size_t evaluations_ = 0;
    double best_energy_ = std::numeric_limits<double>::infinity();
    ParameterVector best_theta_;
    ConvergenceTrace trace_;
};

// One Nelder-Mead run (Gao-Han adaptive coefficients) from x0, stopping on
// the stall rule (no best-so-far improvement >= tol over `stall_window`
// evaluations) or on its evaluation allowance.
struct NmRun {
    ParameterVector x;
    double f = std::numeric_limits<double>::infinity();
};

NmRun nelder_mead_run(TracedObjective& objective, const ParameterVector& x0,
                      std::size_t max_evals, double tol, double step,
                      std::size_t stall_window = 50) {
    const std::size_t n = x0.size();
    const double alpha = 1.0;
    const double gamma = 1.0 + 2.0 / static_cast<double>(n);
    const double beta = 0.75 - 1.0 / (2.0 * static_cast<double>(n));
    const double sigma = 1.0 - 1.0 / static_cast<double>(n);

    std::size_t used = 0;
    auto eval = [&](const ParameterVector& x) {
        ++used;
        return objective(x);
    };

    std::vector<ParameterVector> verts;
    std::vector<double> fvals;
    verts.push_back(x0);
    fvals.push_back(eval(x0));
    for (std::size_t i = 0; i < n && used < max_evals; ++i) {
        ParameterVector v = x0;
        v[i] += step;
        verts.push_back(v);
        fvals.push_back(eval(v));
    }

    double run_best = *std::min_element(fvals.begin(), fvals.end());
    std::size_t last_improvement = used;

    std::vector<std::size_t> order(verts.size());
    while (used < max_evals && verts.size() == n + 1) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
        std::vector<ParameterVector> v2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            v2[i] = verts[order[i]];
            f2[i] = fvals[order[i]];
        }
        verts.swap(v2);
        fvals.swap(f2);

        if (fvals[0] < run_best - tol) {
            run_best = fvals[0];
            last_improvement = used;
        }
        if (used - last_improvement >= stall_window) break;

        ParameterVector centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < n; ++d) centroid[d] += verts[i][d];
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](const ParameterVector& from, double coeff) {
            ParameterVector p(n);
            for (std::size_t d = 0; d < n; ++d)
                p[d] = centroid[d] + coeff * (from[d] - centroid[d]);
            return p;
        };

        const ParameterVector xr = blend(verts[n], -alpha);
        const double fr = eval(xr);
        if (fr < fvals[0]) {
            if (used >= max_evals) break;
            const ParameterVector xe = blend(xr, gamma);
            const double fe = eval(xe);
            if (fe < fr) {
                verts[n] = xe;
                fvals[n] = fe;
            } else {
                verts[n] = xr;
                fvals[n] = fr;
            }
        } else if (fr < fvals[n - 1]) {
            verts[n] = xr;
            fvals[n] = fr;
        } else {
            if (used >= max_evals) break;
            const bool outside = fr < fvals[n];
            const ParameterVector xc = outside ? blend(xr, beta) : blend(verts[n], beta);
            const double fc = eval(xc);
            if (outside ? fc <= fr : fc < fvals[n]) {
                verts[n] = xc;
                fvals[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n && used < max_evals; ++i) {
                    for (std::size_t d = 0; d < n; ++d)
                        verts[i][d] = verts[0][d] + sigma * (verts[i][d] - verts[0][d]);
                    fvals[i] = eval(verts[i]);
                }
            }
        }
    }

    const std::size_t ibest =
        std::min_element(fvals.begin(), fvals.end()) - fvals.begin();
    return {verts[ibest], fvals[ibest]};
}

OptimizeResult finish(TracedObjective& objective, bool converged) {
    OptimizeResult result;
    result.energy = objective.best_energy();
    result.theta = objective.best_theta();
    result.evaluations = objective.evaluations();
    result.converged = converged;
    result.trace = objective.take_trace();
    return result;
}

OptimizeResult optimize_nelder_mead(const IsingModel& model, const AnsatzSpec& spec,
                                    const OptimizerConfig& config) {
    TracedObjective objective(model, spec, config);
    const std::size_t dim = spec.parameter_count();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> init(0.0, M_PI);

    // the stall window must cover at least the simplex construction, which
    // already takes dim+1 evaluations
    const std::size_t stall_window = std::max<std::size_t>(50, 2 * (dim + 1));
    const std::size_t explore_each =
        std::max<std::size_t>(4 * dim, (config.budget / 3) / config.restarts);

    ParameterVector best_theta;
    double best = std::numeric_limits<double>::infinity();
    std::size_t fruitless = 0;

    auto remaining = [&] {
        return config.budget - std::min(config.budget, objective.evaluations());
    };
    auto explore_once = [&] {
        ParameterVector x0(dim);
        for (double& v : x0) v = init(rng);
        const NmRun run = nelder_mead_run(objective, x0,
                                          std::min(explore_each, remaining()),
                                          config.tolerance, 0.5, stall_window);
        if (run.f < best - 0.1 * config.tolerance) {
            best = run.f;
            best_theta = run.x;
            fruitless = 0;
        } else {
            ++fruitless;
        }
    };

    for (std::size_t r = 0; r < config.restarts && remaining() > 0; ++r) explore_once();

    // polish the incumbent with fresh simplexes of shrinking size; a full
    // stale cycle means the search has settled, after which additional random
    // starts may still revise the basin
    static constexpr double kPolishSteps[] = {0.3, 0.1, 0.03, 0.01, 0.003, 0.001};
    constexpr std::size_t kCycle = std::size(kPolishSteps);
    std::size_t step_index = 0;
    std::size_t stale = 0;
    bool settled = false;

    while (remaining() > 0) {
        if (settled && fruitless >= config.restarts) break;
        if (stale >= kCycle) {
            explore_once();
            stale = 0;
            step_index = 0;
            continue;
        }
        const double prev = best;
        const NmRun run = nelder_mead_run(
            objective, best_theta, std::min<std::size_t>(3000, remaining()),
            config.tolerance, kPolishSteps[step_index % kCycle], stall_window);
        ++step_index;
        if (run.f < best) {
            best = run.f;
            best_theta = run.x;
        }
        if (prev - best < 0.1 * config.tolerance) {
            if (++stale >= kCycle) settled = true;
        } else {
            stale = 0;
            fruitless = 0;
        }
    }

    return finish(objective, settled);
}

OptimizeResult optimize_spsa(const IsingModel& model, const AnsatzSpec& spec,
                             const OptimizerConfig& config) {
    TracedObjective objective(model, spec, config);
    const std::size_t dim = spec.parameter_count();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> init(0.0, M_PI);
    std::bernoulli_distribution coin(0.5);

    ParameterVector theta(dim);
    for (double& v : theta) v = init(rng);

    const double a0 = 0.2;
    const double c0 = 0.15;
    const double big_a = 0.1 * static_cast<double>(config.budget) / 2.0;

    double stall_best = std::numeric_limits<double>::infinity();
    std::size_t last_improvement = 0;
    bool settled = false;

    ParameterVector plus(dim), minus(dim), delta(dim);
    for (std::size_t k = 0; objective.evaluations() + 2 <= config.budget; ++k) {
        const double ck = c0 / std::pow(static_cast<double>(k + 1), 0.101);
        const double ak =
            a0 / std::pow(static_cast<double>(k + 1) + big_a, 0.602);
        for (std::size_t d = 0; d < dim; ++d) {
            delta[d] = coin(rng) ? 1.0 : -1.0;
            plus[d] = theta[d] + ck * delta[d];
            minus[d] = theta[d] - ck * delta[d];
        }
        const double fp = objective(plus);
        const double fm = objective(minus);
        for (std::size_t d = 0; d < dim; ++d)
            theta[d] -= ak * (fp - fm) / (2.0 * ck * delta[d]);

        if (objective.best_energy() < stall_best - config.tolerance) {
            stall_best = objective.best_energy();
            last_improvement = objective.evaluations();
        } else if (objective.evaluations() - last_improvement >= 200) {
            settled = true;
            break;
        }
    }
    if (objective.evaluations() < config.budget)
        objective(theta);

    return finish(objective, settled);
}

} // namespace

OptimizeResult optimize(const IsingModel& model, const AnsatzSpec& spec,
                        const OptimizerConfig& config) {
    config.validate();
    if (spec.n_qubits != model.n)
        throw DimensionMismatch("ansatz qubit count does not match the model");
    if (config.method == OptMethod::NelderMeadMultistart)
        return optimize_nelder_mead(model, spec, config);
    return optimize_spsa(model, spec, config);
}

} // namespace vqt
