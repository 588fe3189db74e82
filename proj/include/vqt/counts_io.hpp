// Text formats for coincidence-count records and probability sidecars.
//
// Count file, UTF-8, LF line endings, comments start with '#':
//
//   # free-form metadata
//   label,countA_setting,countB_setting,coincidences
//   z+z+,z+,z+,1023
//   ...
//
// Exactly the 36 joint-setting rows are required. Probability files share
// the layout with a `probability` value column.

#pragma once

#include <filesystem>

#include "vqt/tomography.hpp"

namespace vqt {

CountRecord load_counts(const std::filesystem::path& path);
void save_counts(const CountRecord& c, const std::filesystem::path& path);

MeasurementVector load_probabilities(const std::filesystem::path& path);
void save_probabilities(const MeasurementVector& m, const std::filesystem::path& path,
                        const std::string& metadata = {});

// Peek at the header to distinguish count files from probability files.
enum class MeasurementFileKind { Counts, Probabilities };
MeasurementFileKind probe_measurement_file(const std::filesystem::path& path);

} // namespace vqt
