#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "vqt/counts_io.hpp"
#include "vqt/errors.hpp"

using namespace vqt;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("vqt_io_" + name);
}

CountRecord sample_record(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> dist(0, 100000);
    CountRecord rec;
    rec.labels = joint_labels();
    rec.counts.reserve(36);
    for (int k = 0; k < 36; ++k) rec.counts.push_back(dist(rng));
    rec.metadata = "seed=" + std::to_string(seed);
    return rec;
}

} // namespace

TEST_CASE("count files round-trip") {
    const auto path = temp_file("roundtrip.csv");
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const CountRecord rec = sample_record(seed);
        save_counts(rec, path);
        CHECK(load_counts(path) == rec);
    }
    std::filesystem::remove(path);
}

TEST_CASE("a well-formed file parses with matching labels") {
    const auto path = temp_file("wellformed.csv");
    CountRecord rec = sample_record(9);
    rec.metadata = "acquired at the bench";
    save_counts(rec, path);
    const CountRecord loaded = load_counts(path);
    CHECK(loaded.labels == joint_labels());
    CHECK(loaded.metadata == "acquired at the bench");
    CHECK(probe_measurement_file(path) == MeasurementFileKind::Counts);
    std::filesystem::remove(path);
}

TEST_CASE("a 35-row file reports the missing setting") {
    const auto path = temp_file("missing.csv");
    {
        std::ofstream out(path);
        out << "label,countA_setting,countB_setting,coincidences\n";
        const auto labels = joint_labels();
        const auto& singles = setting_labels();
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = 0; b < 6; ++b) {
                if (a == 5 && b == 5) continue; // drop y-y-
                out << labels[6 * a + b] << ',' << singles[a] << ',' << singles[b] << ",10\n";
            }
    }
    CHECK_THROWS_AS(load_counts(path), MissingSetting);
    std::filesystem::remove(path);
}

TEST_CASE("malformed rows carry line numbers") {
    const auto path = temp_file("malformed.csv");

    auto write = [&](const std::string& body) {
        std::ofstream out(path);
        out << body;
    };

    write("label,countA_setting,countB_setting,coincidences\nz+z+,z+,z+,notanumber\n");
    CHECK_THROWS_AS(load_counts(path), ParseError);

    write("label,countA_setting,countB_setting,coincidences\nz+z+,z+,z+,-5\n");
    CHECK_THROWS_AS(load_counts(path), ParseError);

    write("label,countA_setting,countB_setting,coincidences\nz+z-,z+,z+,5\n");
    CHECK_THROWS_AS(load_counts(path), ParseError); // label/settings mismatch

    write("not,a,real,header\nz+z+,z+,z+,5\n");
    CHECK_THROWS_AS(load_counts(path), ParseError);

    write("");
    CHECK_THROWS_AS(load_counts(path), ParseError);

    try {
        write("label,countA_setting,countB_setting,coincidences\nz+z+,z+,z+,bad\n");
        load_counts(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::filesystem::remove(path);
}

TEST_CASE("duplicate settings are rejected") {
    const auto path = temp_file("dup.csv");
    CountRecord rec = sample_record(4);
    save_counts(rec, path);
    {
        std::ofstream out(path, std::ios::app);
        out << "z+z+,z+,z+,1\n";
    }
    CHECK_THROWS_AS(load_counts(path), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("probability files round-trip at full precision") {
    const auto path = temp_file("probs.csv");
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MeasurementVector mv;
    mv.source = MeasurementSource::SyntheticExact;
    for (int k = 0; k < 36; ++k) mv.m.push_back(unit(rng));
    save_probabilities(mv, path, "exact");
    const MeasurementVector loaded = load_probabilities(path);
    REQUIRE(loaded.m.size() == 36);
    for (std::size_t k = 0; k < 36; ++k)
        CHECK(loaded.m[k] == mv.m[k]); // %.17g round-trips doubles exactly
    CHECK(probe_measurement_file(path) == MeasurementFileKind::Probabilities);
    std::filesystem::remove(path);
}

TEST_CASE("missing files raise IoError") {
    CHECK_THROWS_AS(load_counts("/nonexistent/vqt/counts.csv"), IoError);
    CHECK_THROWS_AS(probe_measurement_file("/nonexistent/vqt/counts.csv"), IoError);
}
