#pragma once

#include <string>
#include <vector>

namespace imexdde {

struct CsvTable {
  std::vector<std::string> metadata;  // "#"-prefixed lines, prefix stripped
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> footer;  // "#"-prefixed lines after the data
};

/// Shortest-safe round-trip formatting (17 significant digits).
[[nodiscard]] std::string format_double(double value);

/// Writes metadata lines as "# ...", the header, one line per row, then footer lines.
void write_csv(const std::string& path, const CsvTable& table);
[[nodiscard]] std::string to_csv(const CsvTable& table);

/// Parses numeric CSV as written by write_csv. Non-numeric cells throw ErrorCode::io.
[[nodiscard]] CsvTable read_csv(const std::string& path);
[[nodiscard]] CsvTable parse_csv(const std::string& text);

}  // namespace imexdde
