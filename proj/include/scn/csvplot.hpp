#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scn/config.hpp"

namespace scn {

// CSV sweep output and a minimal deterministic SVG line chart. CSV layout:
// one '#' comment line (config hash, seed, tool version), then a header row,
// then numeric rows; comma separator, '.' decimal, UTF-8.

inline constexpr const char* kToolVersion = "0.1.0";

struct CsvTable {
  std::string comment;                       // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;     // NaN renders as an empty cell
};

std::string standard_comment(const NetworkConfig& cfg, std::uint64_t seed);

std::string render_csv(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);

// throws std::runtime_error on malformed input
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

// Log-x line chart of every column against the first one. Byte-deterministic
// for identical input.
std::string render_svg_chart(const CsvTable& table, const std::string& title);

}  // namespace scn
