#pragma once

// Column files: one real per line, optional header, '#' comment lines, LF or
// CRLF line endings. A header with several comma-separated names selects one
// column by name, which lets `maxent --format csv` output be read back.

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "qtherm/distribution.hpp"

namespace qtherm {

/// Throws ParseError carrying the 1-based line number of the offending line.
std::vector<double> read_column(std::istream& in, std::string_view column);
std::vector<double> read_column_file(const std::filesystem::path& path, std::string_view column);

/// Column `p`. Invalid probability vectors are reported as ParseError.
Distribution read_distribution(const std::filesystem::path& path);

/// Column `E`.
EnergySpectrum read_spectrum(const std::filesystem::path& path);

/// 17 significant digits, enough to round-trip any double.
std::string format_real(double v);

}  // namespace qtherm
