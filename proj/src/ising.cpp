#include "vqt/ising.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vqt/errors.hpp"
#include "vqt/kernels.hpp"

namespace vqt {

bool IsingModel::all_finite() const {
    if (!std::isfinite(offset)) return false;
    for (double v : coupling)
        if (!std::isfinite(v)) return false;
    for (double v : field)
        if (!std::isfinite(v)) return false;
    return true;
}

std::uint64_t bitstring_code(const Bitstring& b) {
    std::uint64_t code = 0;
    for (std::uint8_t bit : b) code = (code << 1) | (bit & 1u);
    return code;
}

Bitstring bitstring_from_code(std::uint64_t code, std::size_t n) {
    Bitstring b(n);
    for (std::size_t j = 0; j < n; ++j)
        b[j] = static_cast<std::uint8_t>((code >> (n - 1 - j)) & 1u);
    return b;
}

std::string bitstring_to_string(const Bitstring& b) {
    std::string s;
    s.reserve(b.size());
    for (std::uint8_t bit : b) s += bit ? '1' : '0';
    return s;
}

Bitstring bitstring_from_string(const std::string& s) {
    Bitstring b;
    b.reserve(s.size());
    for (char ch : s) {
        if (ch != '0' && ch != '1')
            throw DataError("bitstring contains characters other than 0/1");
        b.push_back(ch == '1' ? 1 : 0);
    }
    return b;
}

QuadraticForm quadratic_form(const MeasurementMatrix& t_matrix, std::span<const double> m) {
    const ComplexMatrix& t = t_matrix.t;
    if (t.rows() != m.size())
        throw DimensionMismatch("row count of T does not match measurement length");
    const std::size_t n = t.cols();

    QuadraticForm qf;
    qf.q = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < t.rows(); ++k)
                s += std::conj(t(k, i)) * t(k, j);
            qf.q(i, j) = s;
        }
    qf.t.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < t.rows(); ++k)
            s += std::conj(t(k, j)) * m[k];
        qf.t[j] = s;
    }
    qf.constant = 0.0;
    for (double mk : m) qf.constant += mk * mk;
    return qf;
}

QuadraticForm quadratic_form(const MeasurementMatrix& t_matrix, const MeasurementVector& m) {
    return quadratic_form(t_matrix, std::span<const double>(m.m));
}

double cost(std::span<const double> p, const QuadraticForm& qf) {
    const std::size_t n = qf.t.size();
    if (p.size() != n)
        throw DimensionMismatch("cost vector length does not match the form");
    std::vector<double> qreal(n * n);
    std::vector<double> treal(n);
    for (std::size_t i = 0; i < n; ++i) {
        treal[i] = qf.t[i].real();
        for (std::size_t j = 0; j < n; ++j)
            qreal[i * n + j] = qf.q(i, j).real();
    }
    const auto& ops = kernels::active();
    return ops.sym_quad_form(qreal.data(), p.data(), n) -
           2.0 * ops.dot(treal.data(), p.data(), n) + qf.constant;
}

IsingModel ising_coefficients(const QuadraticForm& qf) {
    const std::size_t n = qf.t.size();
    if (qf.q.rows() != n || qf.q.cols() != n)
        throw DimensionMismatch("quadratic form shapes disagree");

    IsingModel model;
    model.n = n;
    model.coupling.assign(n * n, 0.0);
    model.field.assign(n, 0.0);

    double sum_all = 0.0;
    double sum_diag = 0.0;
    double sum_t = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double row_sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double r = 0.5 * (qf.q(j, k).real() + qf.q(k, j).real());
            row_sum += r;
            sum_all += r;
            if (j == k) sum_diag += r;
            // quarter coefficient from each ordered pair; both orderings land
            // on the same unordered-pair slot
            else model.coupling[j * n + k] = 0.5 * r;
        }
        model.field[j] = -0.5 * row_sum + qf.t[j].real();
        sum_t += qf.t[j].real();
    }
    // the Z^2 = I diagonal contribution stays in the offset so the bitstring
    // energy reproduces the cost identically
    model.offset = 0.25 * sum_all + 0.25 * sum_diag + qf.constant - sum_t;
    return model;
}

double energy_of_bitstring(const Bitstring& b, const IsingModel& model) {
    if (b.size() != model.n)
        throw DimensionMismatch("bitstring length does not match the model");
    std::vector<double> z(model.n);
    for (std::size_t j = 0; j < model.n; ++j) z[j] = b[j] ? -1.0 : 1.0;
    return kernels::active().ising_energy(model.coupling.data(), model.field.data(),
                                          z.data(), model.n) +
           model.offset;
}

BruteForceResult brute_force_minimum(const IsingModel& model) {
    if (model.n == 0 || model.n > 24)
        throw TooManyQubits("brute force enumeration is guarded at 1 <= n <= 24");
    const std::uint64_t total = std::uint64_t{1} << model.n;
    const std::size_t block = 4096;
    std::vector<double> energies(block);

    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_code = 0;
    const auto& ops = kernels::active();
    for (std::uint64_t first = 0; first < total; first += block) {
        const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(block, total - first));
        ops.bitstring_energies(model.coupling.data(), model.field.data(), model.offset,
                               model.n, first, count, energies.data());
        for (std::size_t i = 0; i < count; ++i) {
            if (energies[i] < best) { // strict: keeps the lowest code on ties
                best = energies[i];
                best_code = first + i;
            }
        }
    }
    return {bitstring_from_code(best_code, model.n), best};
}

void save_ising(const IsingModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    char buf[64];
    out << "# ising model\n";
    out << "n " << model.n << '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", model.offset);
    out << "offset " << buf << '\n';
    for (std::size_t j = 0; j < model.n; ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", model.field[j]);
        out << "h " << j << ' ' << buf << '\n';
    }
    for (std::size_t j = 0; j < model.n; ++j)
        for (std::size_t k = j + 1; k < model.n; ++k) {
            const double v = model.coupling_at(j, k);
            if (v == 0.0) continue;
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << "J " << j << ' ' << k << ' ' << buf << '\n';
        }
    if (!out)
        throw IoError("write failed for " + path.string());
}

IsingModel load_ising(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());

    IsingModel model;
    bool have_n = false;
    std::string line;
    std::size_t lineno = 0;
    std::vector<bool> field_seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "n") {
            if (!(ss >> model.n) || model.n == 0)
                throw ParseError("invalid qubit count", lineno);
            model.coupling.assign(model.n * model.n, 0.0);
            model.field.assign(model.n, 0.0);
            field_seen.assign(model.n, false);
            have_n = true;
        } else if (tag == "offset") {
            if (!have_n) throw ParseError("offset before n", lineno);
            if (!(ss >> model.offset)) throw ParseError("invalid offset", lineno);
        } else if (tag == "h") {
            if (!have_n) throw ParseError("h before n", lineno);
            std::size_t j;
            double v;
            if (!(ss >> j >> v) || j >= model.n)
                throw ParseError("invalid field line", lineno);
            model.field[j] = v;
            field_seen[j] = true;
        } else if (tag == "J") {
            if (!have_n) throw ParseError("J before n", lineno);
            std::size_t j, k;
            double v;
            if (!(ss >> j >> k >> v) || j >= model.n || k >= model.n || j == k)
                throw ParseError("invalid coupling line", lineno);
            model.coupling[j * model.n + k] = v;
            model.coupling[k * model.n + j] = v;
        } else {
            throw ParseError("unknown tag '" + tag + "'", lineno);
        }
    }
    if (!have_n)
        throw ParseError("file does not define n", lineno == 0 ? 1 : lineno);
    for (std::size_t j = 0; j < model.n; ++j)
        if (!field_seen[j])
            throw ParseError("missing field entry for qubit " + std::to_string(j), lineno);
    if (!model.all_finite())
        throw ParseError("non-finite coefficients", lineno);
    return model;
}

} // namespace vqt
