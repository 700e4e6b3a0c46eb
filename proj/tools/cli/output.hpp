#pragma once

// CSV and minimal SVG emission.

#include <ostream>
#include <string>
#include <vector>

namespace phasecorr::cli {

/// 12 significant digits, "%.12g".
std::string format_number(double v);

using Row = std::vector<std::string>;

/// Comma-separated, header first, LF line endings.
void write_csv(std::ostream& out, const Row& header, const std::vector<Row>& rows);

struct Series {
  std::string name;
  std::vector<double> values;
};

/// Line plot of several series over a shared x axis.
void write_line_plot(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::vector<double>& x, const std::vector<Series>& series);

/// Heat map of values[row][col] over (x = col, y = row); zero maps to white,
/// positive to red, negative to blue.
void write_heatmap(std::ostream& out, const std::string& title, const std::vector<double>& x,
                   const std::vector<double>& y, const std::vector<std::vector<double>>& values);

}  // namespace phasecorr::cli
