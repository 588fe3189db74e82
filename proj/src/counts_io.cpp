#include "vqt/counts_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "vqt/errors.hpp"

namespace vqt {

namespace {

constexpr const char* kCountHeader = "label,countA_setting,countB_setting,coincidences";
constexpr const char* kProbHeader = "label,countA_setting,countB_setting,probability";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

struct ParsedFile {
    std::string header;
    std::string metadata;
    // label -> (value text, line number)
    std::vector<std::tuple<std::string, std::string, std::size_t>> rows;
};

ParsedFile parse_measurement_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());

    ParsedFile out;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::string metadata;

    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!header_seen) {
                std::string text = line.substr(1);
                if (!text.empty() && text[0] == ' ') text.erase(0, 1);
                if (!metadata.empty()) metadata += '\n';
                metadata += text;
            }
            continue;
        }
        if (!header_seen) {
            if (line != kCountHeader && line != kProbHeader)
                throw ParseError("unrecognized header '" + line + "'", lineno);
            out.header = line;
            header_seen = true;
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != 4)
            throw ParseError("expected 4 comma-separated fields", lineno);
        const auto& known = setting_labels();
        for (int col : {1, 2})
            if (std::find(known.begin(), known.end(), fields[col]) == known.end())
                throw ParseError("unknown setting '" + fields[col] + "'", lineno);
        if (fields[0] != fields[1] + fields[2])
            throw ParseError("label '" + fields[0] + "' does not match settings", lineno);
        out.rows.emplace_back(fields[0], fields[3], lineno);
    }
    if (!header_seen)
        throw ParseError("missing header line", lineno == 0 ? 1 : lineno);
    out.metadata = metadata;
    return out;
}

// Reorders parsed rows into canonical joint-setting order, enforcing
// completeness and uniqueness.
template <typename Value, typename Parse>
std::vector<Value> canonicalize(const ParsedFile& f, Parse parse_value) {
    std::map<std::string, std::pair<Value, std::size_t>> by_label;
    for (const auto& [label, text, lineno] : f.rows) {
        if (by_label.count(label))
            throw ParseError("duplicate setting '" + label + "'", lineno);
        by_label.emplace(label, std::make_pair(parse_value(text, lineno), lineno));
    }
    const auto canonical = joint_labels();
    std::vector<Value> values;
    values.reserve(canonical.size());
    for (const auto& label : canonical) {
        auto it = by_label.find(label);
        if (it == by_label.end())
            throw MissingSetting("setting '" + label + "' absent from file");
        values.push_back(it->second.first);
    }
    if (by_label.size() != canonical.size())
        throw ParseError("file contains settings outside the 36-element set",
                         std::get<2>(f.rows.front()));
    return values;
}

void write_metadata(std::ofstream& out, const std::string& metadata) {
    if (metadata.empty()) return;
    std::istringstream in(metadata);
    std::string line;
    while (std::getline(in, line)) out << "# " << line << '\n';
}

} // namespace

CountRecord load_counts(const std::filesystem::path& path) {
    ParsedFile f = parse_measurement_file(path);
    if (f.header != kCountHeader)
        throw ParseError("expected a count file header", 1);
    CountRecord rec;
    rec.labels = joint_labels();
    rec.metadata = f.metadata;
    rec.counts = canonicalize<long long>(f, [](const std::string& text, std::size_t lineno) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw ParseError("invalid count '" + text + "'", lineno);
        if (v < 0)
            throw ParseError("negative count", lineno);
        return v;
    });
    return rec;
}

void save_counts(const CountRecord& c, const std::filesystem::path& path) {
    if (c.counts.size() != 36 || c.labels != joint_labels())
        throw DimensionMismatch("count record is not in canonical 36-setting layout");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    write_metadata(out, c.metadata);
    out << kCountHeader << '\n';
    const auto& labels = setting_labels();
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            const std::size_t k = 6 * a + b;
            out << c.labels[k] << ',' << labels[a] << ',' << labels[b] << ','
                << c.counts[k] << '\n';
        }
    if (!out)
        throw IoError("write failed for " + path.string());
}

MeasurementVector load_probabilities(const std::filesystem::path& path) {
    ParsedFile f = parse_measurement_file(path);
    if (f.header != kProbHeader)
        throw ParseError("expected a probability file header", 1);
    MeasurementVector mv;
    mv.source = MeasurementSource::SyntheticExact;
    mv.m = canonicalize<double>(f, [](const std::string& text, std::size_t lineno) {
        try {
            std::size_t pos = 0;
            double v = std::stod(text, &pos);
            if (pos != text.size())
                throw ParseError("invalid probability '" + text + "'", lineno);
            return v;
        } catch (const std::invalid_argument&) {
            throw ParseError("invalid probability '" + text + "'", lineno);
        }
    });
    return mv;
}

void save_probabilities(const MeasurementVector& m, const std::filesystem::path& path,
                        const std::string& metadata) {
    if (m.m.size() != 36)
        throw DimensionMismatch("measurement vector is not in canonical 36-setting layout");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    write_metadata(out, metadata);
    out << kProbHeader << '\n';
    const auto& labels = setting_labels();
    char buf[64];
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            const std::size_t k = 6 * a + b;
            std::snprintf(buf, sizeof(buf), "%.17g", m.m[k]);
            out << labels[a] << labels[b] << ',' << labels[a] << ',' << labels[b] << ','
                << buf << '\n';
        }
    if (!out)
        throw IoError("write failed for " + path.string());
}

MeasurementFileKind probe_measurement_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        if (line == kCountHeader) return MeasurementFileKind::Counts;
        if (line == kProbHeader) return MeasurementFileKind::Probabilities;
        throw ParseError("unrecognized header '" + line + "'", lineno);
    }
    throw ParseError("missing header line", lineno == 0 ? 1 : lineno);
}

} // namespace vqt
