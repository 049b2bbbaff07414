#pragma once

#include <string>
#include <vector>

namespace soc_cascade::cli {

/// Numeric table read from a trace or sweep CSV. The first column is the x
/// axis; every other column is one series.
struct SeriesTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Throws std::runtime_error on a non-numeric cell or ragged row.
SeriesTable parse_series_csv(const std::string& text);

/// Static SVG line chart. Output depends only on the table and title.
std::string render_svg(const SeriesTable& table, const std::string& title);

}  // namespace soc_cascade::cli
