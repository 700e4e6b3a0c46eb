#include "cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace phasecorr::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420, kPad = 56;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& out, const Row& header, const std::vector<Row>& rows) {
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_line_plot(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::vector<double>& x, const std::vector<Series>& series) {
  double x_lo = std::numeric_limits<double>::max(), x_hi = std::numeric_limits<double>::lowest();
  double y_lo = x_lo, y_hi = x_hi;
  for (double v : x) {
    x_lo = std::min(x_lo, v);
    x_hi = std::max(x_hi, v);
  }
  for (const auto& s : series)
    for (double v : s.values)
      if (std::isfinite(v)) {
        y_lo = std::min(y_lo, v);
        y_hi = std::max(y_hi, v);
      }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
  auto px = [&](double v) { return kPad + (v - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kPad); };
  auto py = [&](double v) { return kHeight - kPad - (v - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kPad); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  out << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kWidth - 2 * kPad << "\" height=\""
      << kHeight - 2 * kPad << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 14 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << escape(x_label) << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x_lo + (x_hi - x_lo) * k / 4, yv = y_lo + (y_hi - y_lo) * k / 4;
    out << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << kHeight - kPad + 16
        << "\" text-anchor=\"middle\" font-size=\"10\">" << format_number(xv) << "</text>\n";
    out << "<text x=\"" << kPad - 4 << "\" y=\"" << fixed(py(yv) + 3) << "\" text-anchor=\"end\" font-size=\"10\">"
        << format_number(yv) << "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < series[s].values.size(); ++i)
      if (std::isfinite(series[s].values[i])) out << fixed(px(x[i])) << ',' << fixed(py(series[s].values[i])) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kPad + 4 << "\" y=\"" << kPad + 14 * (s + 1) << "\" font-size=\"10\" fill=\""
        << color << "\">" << escape(series[s].name) << "</text>\n";
  }
  out << "</svg>\n";
}

void write_heatmap(std::ostream& out, const std::string& title, const std::vector<double>& x,
                   const std::vector<double>& y, const std::vector<std::vector<double>>& values) {
  double extent = 0.0;
  for (const auto& row : values)
    for (double v : row) extent = std::max(extent, std::abs(v));
  if (extent == 0.0) extent = 1.0;
  const double cw = (kWidth - 2 * kPad) / std::max<std::size_t>(x.size(), 1);
  const double ch = (kHeight - 2 * kPad) / std::max<std::size_t>(y.size(), 1);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  for (std::size_t r = 0; r < y.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double t = std::clamp(values[r][c] / extent, -1.0, 1.0);
      const int fade = static_cast<int>(std::lround(255 * (1.0 - std::abs(t))));
      char color[8];
      if (t >= 0)
        std::snprintf(color, sizeof color, "#ff%02x%02x", fade, fade);
      else
        std::snprintf(color, sizeof color, "#%02x%02xff", fade, fade);
      out << "<rect x=\"" << fixed(kPad + c * cw) << "\" y=\"" << fixed(kHeight - kPad - (r + 1) * ch)
          << "\" width=\"" << fixed(cw + 0.5) << "\" height=\"" << fixed(ch + 0.5) << "\" fill=\"" << color
          << "\"/>\n";
    }
  out << "<text x=\"" << kPad << "\" y=\"" << kHeight - 14 << "\" font-size=\"10\">x " << format_number(x.front())
      << " .. " << format_number(x.back()) << ", y " << format_number(y.front()) << " .. " << format_number(y.back())
      << ", |W| max " << format_number(extent) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace phasecorr::cli
