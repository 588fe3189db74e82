#include "vqt/pipeline.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "vqt/errors.hpp"

namespace vqt {

namespace {

using nlohmann::json;

constexpr std::uint64_t kSampleSalt = 0x73616d706c65ULL; // distinct stream for final sampling
constexpr double kExactCountScale = 1e6;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed ^ salt;
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for '" + key + "': " + value);
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("invalid integer value for '" + key + "': " + value);
    return v;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ensure_out_dir(const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    if (ec)
        throw IoError("cannot create output directory " + cfg.out.string());
}

json density_to_json(const DensityMatrix& rho) {
    json rows = json::array();
    for (std::size_t i = 0; i < rho.dim; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < rho.dim; ++j)
            row.push_back({rho.matrix(i, j).real(), rho.matrix(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

DensityMatrix density_from_json(const json& j, std::size_t dim) {
    DensityMatrix rho;
    rho.dim = dim;
    rho.matrix = ComplexMatrix(dim, dim);
    if (!j.is_array() || j.size() != dim)
        throw DataError("state matrix has wrong row count");
    for (std::size_t i = 0; i < dim; ++i) {
        if (!j[i].is_array() || j[i].size() != dim)
            throw DataError("state matrix has wrong column count");
        for (std::size_t k = 0; k < dim; ++k) {
            const auto& cell = j[i][k];
            if (!cell.is_array() || cell.size() != 2)
                throw DataError("state matrix entries must be [re, im] pairs");
            rho.matrix(i, k) = cplx(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return rho;
}

} // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "state") {
        if (value == "correlated") cfg.state = BellKind::Correlated;
        else if (value == "anti-correlated" || value == "anti_correlated")
            cfg.state = BellKind::AntiCorrelated;
        else throw ConfigError("unknown state '" + value + "'");
    } else if (key == "weights") {
        const auto parts = split_list(value);
        if (parts.size() != 2)
            throw ConfigError("weights expects two values");
        cfg.weights = std::make_pair(parse_double(key, parts[0]), parse_double(key, parts[1]));
    } else if (key == "noise_mean") {
        cfg.noise_mean = parse_double(key, value);
    } else if (key == "encoding_scale") {
        cfg.encoding_scale = parse_double(key, value);
        if (!(cfg.encoding_scale > 0.0))
            throw ConfigError("encoding_scale must be positive");
    } else if (key == "ansatz") {
        if (value == "ry") cfg.ansatz = AnsatzFamily::Ry;
        else if (value == "rz_ry_rz") cfg.ansatz = AnsatzFamily::RzRyRz;
        else throw ConfigError("unknown ansatz '" + value + "'");
    } else if (key == "depth") {
        cfg.depth = static_cast<std::size_t>(parse_uint(key, value));
        if (cfg.depth == 0) throw ConfigError("depth must be >= 1");
    } else if (key == "method") {
        cfg.optimizer.method = opt_method_from_string(value);
    } else if (key == "budget") {
        cfg.optimizer.budget = static_cast<std::size_t>(parse_uint(key, value));
    } else if (key == "restarts") {
        cfg.optimizer.restarts = static_cast<std::size_t>(parse_uint(key, value));
    } else if (key == "shots") {
        cfg.optimizer.shots = static_cast<std::size_t>(parse_uint(key, value));
    } else if (key == "tolerance") {
        cfg.optimizer.tolerance = parse_double(key, value);
    } else if (key == "aggregation") {
        cfg.aggregation = aggregation_from_string(value);
    } else if (key == "beta") {
        cfg.beta = parse_double(key, value);
    } else if (key == "sample_shots") {
        cfg.sample_shots = static_cast<std::size_t>(parse_uint(key, value));
        if (cfg.sample_shots == 0) throw ConfigError("sample_shots must be >= 1");
    } else if (key == "seed") {
        cfg.seed = parse_uint(key, value);
        cfg.optimizer.seed = cfg.seed;
    } else if (key == "seeds") {
        cfg.seeds.clear();
        for (const auto& part : split_list(value))
            cfg.seeds.push_back(parse_uint(key, part));
    } else if (key == "noise_means") {
        cfg.noise_means.clear();
        for (const auto& part : split_list(value))
            cfg.noise_means.push_back(parse_double(key, part));
    } else if (key == "out") {
        cfg.out = value;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config " + path.string());
    RunConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not 'key = value'");
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

DensityMatrix config_state(const RunConfig& cfg) { return bell_state(cfg.state, cfg.weights); }

std::string state_label(const RunConfig& cfg) {
    return cfg.state == BellKind::Correlated ? "correlated" : "anti-correlated";
}

MeasurementVector config_measurements(const RunConfig& cfg, const DensityMatrix& rho) {
    const MeasurementVector exact = forward_probabilities(rho, two_qubit_projector_set());
    if (cfg.noise_mean <= 0.0)
        return exact;
    const CountRecord counts = simulate_counts(exact, cfg.noise_mean, cfg.seed);
    return normalize_counts(counts, MeasurementSource::SyntheticNoisy);
}

IsingModel build_ising_instance(const MeasurementMatrix& t_matrix,
                                const MeasurementVector& m, double encoding_scale) {
    std::vector<double> scaled(m.m.size());
    for (std::size_t k = 0; k < m.m.size(); ++k) scaled[k] = encoding_scale * m.m[k];
    return ising_coefficients(quadratic_form(t_matrix, scaled));
}

SolveArtifacts solve_instance(const RunConfig& cfg, const MeasurementVector& m) {
    SolveArtifacts art;
    const MeasurementMatrix t_matrix = measurement_matrix(two_qubit_projector_set());
    art.model = build_ising_instance(t_matrix, m, cfg.encoding_scale);

    AnsatzSpec spec{cfg.ansatz, cfg.depth, art.model.n};
    OptimizerConfig opt_cfg = cfg.optimizer;
    opt_cfg.seed = cfg.seed;
    art.opt = optimize(art.model, spec, opt_cfg);
    art.distribution = sample_bitstrings(spec, art.opt.theta, cfg.sample_shots,
                                         mix_seed(cfg.seed, kSampleSalt));
    return art;
}

ReconstructionReport run_end_to_end(const RunConfig& cfg) {
    const DensityMatrix rho = config_state(cfg);
    const MeasurementVector m = config_measurements(cfg, rho);
    const SolveArtifacts art = solve_instance(cfg, m);
    ReconstructionReport report =
        reconstruct(art.distribution, cfg.aggregation, rho, ReconstructionMethod::Vqe,
                    &art.model, BoltzmannOptions{cfg.beta});
    report.reference_label = state_label(cfg);
    return report;
}

void save_state_json(const DensityMatrix& rho, const std::string& label,
                     const std::filesystem::path& path) {
    json j;
    j["label"] = label;
    j["dim"] = rho.dim;
    j["matrix"] = density_to_json(rho);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

DensityMatrix load_state_json(const std::filesystem::path& path, std::string* label) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DataError("invalid state file " + path.string() + ": " + e.what());
    }
    if (!j.contains("dim") || !j.contains("matrix"))
        throw DataError("state file missing dim/matrix");
    if (label && j.contains("label")) *label = j["label"].get<std::string>();
    DensityMatrix rho = density_from_json(j["matrix"], j["dim"].get<std::size_t>());
    rho.validate();
    return rho;
}

GenDataResult cmd_gen_data(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    const DensityMatrix rho = config_state(cfg);
    const MeasurementVector exact = forward_probabilities(rho, two_qubit_projector_set());

    CountRecord counts;
    if (cfg.noise_mean > 0.0) {
        counts = simulate_counts(exact, cfg.noise_mean, cfg.seed);
    } else {
        // exact mode: proportional integer counts so normalization returns
        // the Born probabilities bit-exactly
        counts.labels = joint_labels();
        counts.counts.reserve(exact.m.size());
        for (double mk : exact.m)
            counts.counts.push_back(static_cast<long long>(std::llround(kExactCountScale * mk)));
    }
    std::ostringstream meta;
    meta << "state=" << state_label(cfg) << " seed=" << cfg.seed
         << " mean=" << format_g17(cfg.noise_mean);
    counts.metadata = meta.str();

    GenDataResult result;
    result.counts_file = cfg.out / "counts.csv";
    result.probs_file = cfg.out / "probs.csv";
    result.state_file = cfg.out / "state.json";
    save_counts(counts, result.counts_file);
    save_probabilities(exact, result.probs_file, meta.str());
    save_state_json(rho, state_label(cfg), result.state_file);
    return result;
}

MeasurementVector load_measurements(const std::filesystem::path& path) {
    switch (probe_measurement_file(path)) {
        case MeasurementFileKind::Counts:
            return normalize_counts(load_counts(path));
        case MeasurementFileKind::Probabilities:
            return load_probabilities(path);
    }
    throw IoError("unreachable");
}

void save_distribution(const BitstringDistribution& dist, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << "# shots=" << dist.total_shots << '\n';
    out << "bitstring,count\n";
    for (const auto& [bits, count] : dist.counts)
        out << bitstring_to_string(bits) << ',' << count << '\n';
}

BitstringDistribution load_distribution(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    BitstringDistribution dist;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "bitstring,count")
                throw ParseError("unrecognized distribution header", lineno);
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("expected 'bitstring,count'", lineno);
        const std::string bits = line.substr(0, comma);
        const std::string count_text = line.substr(comma + 1);
        long long count = 0;
        auto [ptr, ec] =
            std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
        if (ec != std::errc{} || ptr != count_text.data() + count_text.size() || count < 0)
            throw ParseError("invalid count '" + count_text + "'", lineno);
        Bitstring b;
        try {
            b = bitstring_from_string(bits);
        } catch (const DataError&) {
            throw ParseError("invalid bitstring '" + bits + "'", lineno);
        }
        if (!dist.counts.emplace(std::move(b), count).second)
            throw ParseError("duplicate bitstring '" + bits + "'", lineno);
        dist.total_shots += count;
    }
    if (!header_seen)
        throw ParseError("missing distribution header", lineno == 0 ? 1 : lineno);
    return dist;
}

namespace {

SolveSummary solve_artifacts_to_files(const RunConfig& cfg, const SolveArtifacts& art,
                                      bool with_oracle);

} // namespace

SolveSummary cmd_solve(const RunConfig& cfg, const std::filesystem::path& data_file,
                       bool with_oracle) {
    ensure_out_dir(cfg);
    const MeasurementVector m = load_measurements(data_file);
    return solve_artifacts_to_files(cfg, solve_instance(cfg, m), with_oracle);
}

SolveSummary cmd_solve_ising(const RunConfig& cfg, const std::filesystem::path& ising_file,
                             bool with_oracle) {
    ensure_out_dir(cfg);
    SolveArtifacts art;
    art.model = load_ising(ising_file);
    AnsatzSpec spec{cfg.ansatz, cfg.depth, art.model.n};
    OptimizerConfig opt_cfg = cfg.optimizer;
    opt_cfg.seed = cfg.seed;
    art.opt = optimize(art.model, spec, opt_cfg);
    art.distribution = sample_bitstrings(spec, art.opt.theta, cfg.sample_shots,
                                         mix_seed(cfg.seed, kSampleSalt));
    return solve_artifacts_to_files(cfg, art, with_oracle);
}

namespace {

SolveSummary solve_artifacts_to_files(const RunConfig& cfg, const SolveArtifacts& art,
                                      bool with_oracle) {
    SolveSummary summary;
    summary.ising_file = cfg.out / "ising.txt";
    summary.theta_file = cfg.out / "theta.csv";
    summary.trace_file = cfg.out / "trace.csv";
    summary.distribution_file = cfg.out / "distribution.csv";
    summary.final_energy = art.opt.energy;
    summary.evaluations = art.opt.evaluations;
    summary.converged = art.opt.converged;
    summary.modal = modal_bitstring(art.distribution);

    save_ising(art.model, summary.ising_file);

    {
        std::ofstream out(summary.theta_file, std::ios::binary);
        if (!out) throw IoError("cannot write " + summary.theta_file.string());
        out << "index,theta\n";
        for (std::size_t i = 0; i < art.opt.theta.size(); ++i)
            out << i << ',' << format_g17(art.opt.theta[i]) << '\n';
    }
    {
        std::ofstream out(summary.trace_file, std::ios::binary);
        if (!out) throw IoError("cannot write " + summary.trace_file.string());
        out << "iteration,energy,best_energy,elapsed_ms\n";
        char ms[32];
        for (const TracePoint& p : art.opt.trace) {
            std::snprintf(ms, sizeof(ms), "%.3f", p.elapsed_ms);
            out << p.iteration << ',' << format_g17(p.energy) << ','
                << format_g17(p.best_energy) << ',' << ms << '\n';
        }
    }
    save_distribution(art.distribution, summary.distribution_file);

    if (with_oracle) {
        const BruteForceResult oracle = brute_force_minimum(art.model);
        summary.oracle_energy = oracle.energy;
        summary.oracle_minimizer = oracle.minimizer;
        std::ofstream out(cfg.out / "oracle.txt", std::ios::binary);
        if (!out) throw IoError("cannot write oracle.txt");
        out << "bitstring " << bitstring_to_string(oracle.minimizer) << '\n'
            << "energy " << format_g17(oracle.energy) << '\n';
    }
    return summary;
}

} // namespace

ReconstructSummary cmd_reconstruct(const RunConfig& cfg,
                                   const std::filesystem::path& distribution_file,
                                   const std::filesystem::path& reference_file,
                                   const std::optional<std::filesystem::path>& ising_file,
                                   const std::string& trace_file) {
    ensure_out_dir(cfg);
    const BitstringDistribution dist = load_distribution(distribution_file);
    std::string reference_label = reference_file.string();
    const DensityMatrix reference = load_state_json(reference_file, &reference_label);

    std::optional<IsingModel> model;
    if (ising_file)
        model = load_ising(*ising_file);
    if (cfg.aggregation == Aggregation::Boltzmann && !model)
        throw MissingModel("boltzmann aggregation requires --ising");

    ReconstructionReport report =
        reconstruct(dist, cfg.aggregation, reference, ReconstructionMethod::Vqe,
                    model ? &*model : nullptr, BoltzmannOptions{cfg.beta});
    report.reference_label = reference_label;
    report.trace_file = trace_file;

    ReconstructSummary summary;
    summary.report = report;
    summary.report_file = cfg.out / "report.json";
    summary.heatmap_file = cfg.out / "rho_heatmap.csv";

    json j;
    j["method"] = to_string(report.method);
    j["aggregation"] = to_string(report.aggregation);
    j["fidelity"] = report.fidelity_vs_reference;
    j["reference"] = report.reference_label;
    j["rho_hat"] = density_to_json(report.rho_hat);
    j["trace_file"] = report.trace_file;
    {
        std::ofstream out(summary.report_file, std::ios::binary);
        if (!out) throw IoError("cannot write " + summary.report_file.string());
        out << j.dump(2) << '\n';
    }
    {
        std::ofstream out(summary.heatmap_file, std::ios::binary);
        if (!out) throw IoError("cannot write " + summary.heatmap_file.string());
        out << "row,col,re,im\n";
        const DensityMatrix& rho = report.rho_hat;
        for (std::size_t i = 0; i < rho.dim; ++i)
            for (std::size_t k = 0; k < rho.dim; ++k)
                out << i << ',' << k << ',' << format_g17(rho.matrix(i, k).real()) << ','
                    << format_g17(rho.matrix(i, k).imag()) << '\n';
    }
    return summary;
}

OracleSummary cmd_oracle(const RunConfig& cfg,
                         const std::optional<std::filesystem::path>& data_file,
                         const std::optional<std::filesystem::path>& ising_file) {
    ensure_out_dir(cfg);
    if (data_file.has_value() == ising_file.has_value())
        throw ConfigError("oracle needs exactly one of --data or --ising");

    IsingModel model;
    if (ising_file) {
        model = load_ising(*ising_file);
    } else {
        const MeasurementVector m = load_measurements(*data_file);
        model = build_ising_instance(measurement_matrix(two_qubit_projector_set()), m,
                                     cfg.encoding_scale);
    }
    const BruteForceResult result = brute_force_minimum(model);

    OracleSummary summary;
    summary.minimizer = result.minimizer;
    summary.energy = result.energy;
    summary.oracle_file = cfg.out / "oracle.txt";
    std::ofstream out(summary.oracle_file, std::ios::binary);
    if (!out) throw IoError("cannot write " + summary.oracle_file.string());
    out << "bitstring " << bitstring_to_string(result.minimizer) << '\n'
        << "energy " << format_g17(result.energy) << '\n';
    return summary;
}

namespace {

struct BenchmarkRow {
    std::string method;
    std::string state;
    double noise = 0.0;
    std::uint64_t seed = 0;
    double fidelity = std::numeric_limits<double>::quiet_NaN();
    double final_energy = std::numeric_limits<double>::quiet_NaN();
    std::size_t evaluations = 0;
    double elapsed_ms = 0.0;
    std::string status = "ok";
};

BenchmarkRow run_benchmark_cell(const RunConfig& base, double noise, std::uint64_t seed,
                                ReconstructionMethod method) {
    BenchmarkRow row;
    row.method = to_string(method);
    row.state = state_label(base);
    row.noise = noise;
    row.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        RunConfig cfg = base;
        cfg.noise_mean = noise;
        cfg.seed = seed;
        cfg.optimizer.seed = seed;

        const DensityMatrix rho = config_state(cfg);
        const MeasurementVector m = config_measurements(cfg, rho);
        const MeasurementMatrix t_matrix = measurement_matrix(two_qubit_projector_set());

        switch (method) {
            case ReconstructionMethod::Vqe: {
                const SolveArtifacts art = solve_instance(cfg, m);
                const ReconstructionReport report =
                    reconstruct(art.distribution, cfg.aggregation, rho,
                                ReconstructionMethod::Vqe, &art.model,
                                BoltzmannOptions{cfg.beta});
                row.fidelity = report.fidelity_vs_reference;
                row.final_energy = art.opt.energy;
                row.evaluations = art.opt.evaluations;
                break;
            }
            case ReconstructionMethod::BruteForce: {
                const IsingModel model =
                    build_ising_instance(t_matrix, m, cfg.encoding_scale);
                const BruteForceResult oracle = brute_force_minimum(model);
                BitstringDistribution point;
                point.counts[oracle.minimizer] = 1;
                point.total_shots = 1;
                const ReconstructionReport report =
                    reconstruct(point, Aggregation::Top1, rho,
                                ReconstructionMethod::BruteForce);
                row.fidelity = report.fidelity_vs_reference;
                row.final_energy = oracle.energy;
                row.evaluations = std::size_t{1} << model.n;
                break;
            }
            case ReconstructionMethod::LinearInversion: {
                const DensityMatrix rho_hat = linear_inversion(t_matrix, m);
                row.fidelity = fidelity(rho_hat, rho);
                break;
            }
            case ReconstructionMethod::Mle: {
                const MleResult mle = mle_rhor(t_matrix, m);
                row.fidelity = fidelity(mle.rho, rho);
                row.evaluations = mle.iterations;
                break;
            }
        }
    } catch (const std::exception& e) {
        row.status = std::string("error:") + e.what();
        for (char& ch : row.status)
            if (ch == ',' || ch == '\n') ch = ';';
    }
    row.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return row;
}

} // namespace

std::filesystem::path cmd_benchmark(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    const std::vector<std::uint64_t> seeds =
        cfg.seeds.empty() ? std::vector<std::uint64_t>{1, 2, 3, 4, 5} : cfg.seeds;
    const std::vector<double> noises =
        cfg.noise_means.empty() ? std::vector<double>{0.0, 1000.0} : cfg.noise_means;
    static constexpr ReconstructionMethod kMethods[] = {
        ReconstructionMethod::Vqe, ReconstructionMethod::BruteForce,
        ReconstructionMethod::LinearInversion, ReconstructionMethod::Mle};

    struct Cell {
        double noise;
        std::uint64_t seed;
        ReconstructionMethod method;
    };
    std::vector<Cell> cells;
    for (double noise : noises)
        for (std::uint64_t seed : seeds)
            for (ReconstructionMethod method : kMethods)
                cells.push_back({noise, seed, method});

    std::vector<BenchmarkRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    const std::size_t n_workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), cells.size());
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w)
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
                rows[i] = run_benchmark_cell(cfg, cells[i].noise, cells[i].seed,
                                             cells[i].method);
        });
    for (auto& t : workers) t.join();

    const std::filesystem::path path = cfg.out / "benchmark.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << "method,state,noise,seed,fidelity,final_energy,evaluations,elapsed_ms,status\n";
    char ms[32];
    for (const BenchmarkRow& row : rows) {
        std::snprintf(ms, sizeof(ms), "%.3f", row.elapsed_ms);
        out << row.method << ',' << row.state << ',' << format_g17(row.noise) << ','
            << row.seed << ',' << format_g17(row.fidelity) << ','
            << format_g17(row.final_energy) << ',' << row.evaluations << ',' << ms << ','
            << row.status << '\n';
    }
    return path;
}

} // namespace vqt
