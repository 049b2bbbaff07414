#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "soc_cascade/ingest.hpp"

namespace soc_cascade::cli {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 180;
constexpr double kTop = 40;
constexpr double kBottom = 50;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid "-0.00" so tiny negative rounding never changes the bytes.
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Step from {1, 2, 5} x 10^k giving about `target` intervals over span.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double base = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    if (f * base >= raw) return f * base;
  }
  return 10.0 * base;
}

struct Axis {
  double lo;
  double hi;
  double step;
};

Axis make_axis(double lo, double hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double step = nice_step(hi - lo, 5);
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

}  // namespace

SeriesTable parse_series_csv(const std::string& text) {
  std::istringstream in(text);
  const auto records = read_csv(in);
  if (records.empty()) throw std::runtime_error("report: empty CSV");
  SeriesTable table;
  table.columns = records.front().fields;
  if (table.columns.size() < 2) throw std::runtime_error("report: need at least two columns");
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != table.columns.size()) {
      throw std::runtime_error("report: line " + std::to_string(rec.line) + " has " +
                               std::to_string(rec.fields.size()) + " fields, expected " +
                               std::to_string(table.columns.size()));
    }
    std::vector<double> row;
    for (const auto& f : rec.fields) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
        throw std::runtime_error("report: line " + std::to_string(rec.line) +
                                 ": not a number: '" + f + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw std::runtime_error("report: CSV has no data rows");
  return table;
}

std::string render_svg(const SeriesTable& table, const std::string& title) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = 0.0;
  double ymax = -std::numeric_limits<double>::infinity();
  for (const auto& row : table.rows) {
    xmin = std::min(xmin, row[0]);
    xmax = std::max(xmax, row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      ymin = std::min(ymin, row[c]);
      ymax = std::max(ymax, row[c]);
    }
  }
  const Axis ax = make_axis(xmin, xmax);
  const Axis ay = make_axis(ymin, ymax);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
  const auto py = [&](double y) { return kTop + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(title) << "</text>\n";

  const auto ticks = [](const Axis& a) {
    std::vector<double> out;
    const auto count = static_cast<long>(std::llround((a.hi - a.lo) / a.step));
    for (long k = 0; k <= count; ++k) out.push_back(a.lo + static_cast<double>(k) * a.step);
    return out;
  };
  for (double t : ticks(ay)) {
    svg << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(py(t)) << "\" x2=\""
        << fixed(kLeft + pw) << "\" y2=\"" << fixed(py(t)) << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(py(t) + 4)
        << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(ax)) {
    svg << "<line x1=\"" << fixed(px(t)) << "\" y1=\"" << fixed(kTop + ph) << "\" x2=\""
        << fixed(px(t)) << "\" y2=\"" << fixed(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fixed(px(t)) << "\" y=\"" << fixed(kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  svg << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(pw)
      << "\" height=\"" << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kHeight - 10)
      << "\" text-anchor=\"middle\">" << escape_xml(table.columns[0]) << "</text>\n";

  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    const char* color = kPalette[(c - 1) % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      if (r) svg << ' ';
      svg << fixed(px(table.rows[r][0])) << ',' << fixed(py(table.rows[r][c]));
    }
    svg << "\"/>\n";
    const double ly = kTop + 10 + 20 * static_cast<double>(c - 1);
    svg << "<line x1=\"" << fixed(kLeft + pw + 12) << "\" y1=\"" << fixed(ly) << "\" x2=\""
        << fixed(kLeft + pw + 32) << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fixed(kLeft + pw + 38) << "\" y=\"" << fixed(ly + 4) << "\">"
        << escape_xml(table.columns[c]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace soc_cascade::cli
