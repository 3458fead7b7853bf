// Small IO helpers shared by the exporters: atomic file writes, CSV parsing,
// and the float formatting used by every text artifact.
#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace tda {

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partially written artifact.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

// 17 significant digits, enough to round-trip an IEEE double. Infinities
// render as "inf"/"-inf".
std::string format_double(double value);

// Shorter form for rendered output (SVG labels, reports).
std::string format_double(double value, int significant_digits);

// RFC-4180-ish CSV: quoted fields, embedded commas/quotes, CR/LF line ends.
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

std::string trim(const std::string& s);
std::string to_lower(const std::string& s);

}  // namespace tda
