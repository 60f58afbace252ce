#pragma once

// Internal IO helpers shared by the CSV and report writers.

#include <charconv>
#include <filesystem>
#include <string>

namespace linfeat::detail {

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

/// Locale-independent parse of a full cell; returns false on trailing
/// garbage or empty input. Accepts "nan"/"inf" spellings (the caller decides
/// whether non-finite values are legal).
bool parse_double(std::string_view cell, double& out);

std::string read_file(const std::filesystem::path& path);

/// Write-to-temp-then-rename so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace linfeat::detail
