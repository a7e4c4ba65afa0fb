#pragma once

#include <string>
#include <vector>

namespace cavgate {

/// Shortest round-trip decimal with up to 15 significant digits ("%.15g").
std::string format_g15(double v);

/// Writes UTF-8 text atomically: temp file in the target directory, then
/// rename. No partial outputs are ever left at `path`.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// Minimal CSV table: header row plus numeric cells, '\n' line endings.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string to_string() const;
    static CsvTable parse(const std::string& text);
    int column(const std::string& name) const; ///< -1 when absent
};

} // namespace cavgate
