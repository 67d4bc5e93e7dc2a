#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mrproj {

// FNV-1a, 64-bit; stamped on every report row so a row can be traced back
// to the exact config text that produced it.
std::uint64_t fnv1a64(std::string_view data);
std::string hex16(std::uint64_t value);

// %.17g, round-trip exact for doubles; integers print without exponent.
std::string num_str(double v);

// Writes to a dotted temp name in the target directory, fsync-free, then
// renames onto `path`. Readers never observe a partial file.
void write_atomic(const std::string& path, std::string_view content);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);  // size-checked
  std::string str() const;                     // header line + rows, '\n' ends
};

// Minimal polyline chart, one series per label, log-or-linear left to the
// caller (pass transformed values). Char-cell text, no external renderer.
struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};
std::string svg_plot(const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<SvgSeries>& series);

}  // namespace mrproj
