#pragma once

#include <string>
#include <vector>

namespace cavgate {

// Single-panel SVG rendering of sweep/response artifacts. Purely cosmetic;
// both functions are pure functions of the CSV text they are given.

/// Heatmap of a 2-axis sweep CSV: cell grid over the two axis columns,
/// perceptual (viridis-like) ramp scaled to the data range.
std::string svg_heatmap_from_csv(const std::string& csv_text, const std::string& x_column,
                                 const std::string& y_column, const std::string& value_column,
                                 bool log_x, bool log_y, const std::string& title);

/// Line plot of selected columns against an x column.
std::string svg_lineplot_from_csv(const std::string& csv_text, const std::string& x_column,
                                  const std::vector<std::string>& y_columns, bool log_x,
                                  bool log_y, const std::string& title);

} // namespace cavgate
