#include "fte/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fte/errors.hpp"

namespace fte {

namespace {

constexpr int kPanelWidth = 880;
constexpr int kPanelHeight = 310;
constexpr int kMarginLeft = 72;
constexpr int kMarginRight = 18;
constexpr int kMarginTop = 34;
constexpr int kMarginBottom = 46;
// Rendering decimation bound; the CSV keeps every record, the figure is a view.
constexpr std::size_t kMaxPointsPerSeries = 2400;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* dash_for(const std::string& style) {
  if (style == "dashed") return "7,4";
  if (style == "dash-dot") return "9,3,2,3";
  return nullptr;  // solid
}

const char* color_for(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};
  return palette[i % 6];
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0, hi = 1.0;
};

// Round tick spacing to 1/2/5 times a power of ten.
std::vector<double> linear_ticks(const Range& r, int target = 5) {
  const double span = r.hi - r.lo;
  if (!(span > 0.0)) return {r.lo};
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> ticks;
  const double first = std::ceil(r.lo / step) * step;
  for (double v = first; v <= r.hi + 0.5 * step; v += step)
    ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return ticks;
}

}  // namespace

void emit_svg(const std::vector<PanelSpec>& panels,
              const std::filesystem::path& path) {
  if (panels.empty()) throw std::invalid_argument("emit_svg: no panels");
  for (const auto& p : panels) {
    if (p.series.empty()) throw std::invalid_argument("emit_svg: panel without series");
    for (const auto& s : p.series) {
      if (s.t.empty() || s.t.size() != s.y.size())
        throw std::invalid_argument("emit_svg: empty or inconsistent series '" +
                                    s.label + "'");
    }
  }

  const int total_h = kPanelHeight * static_cast<int>(panels.size());
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPanelWidth
      << "\" height=\"" << total_h << "\" viewBox=\"0 0 " << kPanelWidth << " "
      << total_h << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g font-family=\"Helvetica,Arial,sans-serif\" font-size=\"12\">\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const auto& panel = panels[pi];
    const double top = static_cast<double>(pi) * kPanelHeight;
    const double x0 = kMarginLeft;
    const double x1 = kPanelWidth - kMarginRight;
    const double y0 = top + kPanelHeight - kMarginBottom;  // axis baseline
    const double y1 = top + kMarginTop;

    auto transform_y = [&](double v) {
      return panel.log_y ? std::log10(std::max(std::abs(v), 1e-16)) : v;
    };

    Range xr, yr;
    bool first = true;
    for (const auto& s : panel.series) {
      for (std::size_t i = 0; i < s.t.size(); ++i) {
        const double xv = s.t[i];
        const double yv = transform_y(s.y[i]);
        if (first) {
          xr = {xv, xv};
          yr = {yv, yv};
          first = false;
        } else {
          xr.lo = std::min(xr.lo, xv);
          xr.hi = std::max(xr.hi, xv);
          yr.lo = std::min(yr.lo, yv);
          yr.hi = std::max(yr.hi, yv);
        }
      }
    }
    if (xr.hi == xr.lo) xr.hi = xr.lo + 1.0;
    if (yr.hi == yr.lo) {
      const double pad = std::max(1e-12, std::abs(yr.lo) * 0.05);
      yr.lo -= pad;
      yr.hi += pad;
    } else {
      const double pad = 0.05 * (yr.hi - yr.lo);
      yr.lo -= pad;
      yr.hi += pad;
    }

    auto sx = [&](double v) { return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
    auto sy = [&](double v) { return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); };

    // Frame and title
    out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\""
        << num(x1 - x0) << "\" height=\"" << num(y0 - y1)
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(0.5 * (x0 + x1)) << "\" y=\"" << num(y1 - 12)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(panel.title)
        << "</text>\n";

    // X ticks
    for (double tv : linear_ticks(xr)) {
      const double px = sx(tv);
      out << "<line x1=\"" << num(px) << "\" y1=\"" << num(y0) << "\" x2=\""
          << num(px) << "\" y2=\"" << num(y0 + 5)
          << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
      out << "<text x=\"" << num(px) << "\" y=\"" << num(y0 + 18)
          << "\" text-anchor=\"middle\">" << num(tv) << "</text>\n";
    }
    out << "<text x=\"" << num(0.5 * (x0 + x1)) << "\" y=\"" << num(y0 + 36)
        << "\" text-anchor=\"middle\">" << escape(panel.x_label) << "</text>\n";

    // Y ticks
    if (panel.log_y) {
      const int d0 = static_cast<int>(std::ceil(yr.lo));
      const int d1 = static_cast<int>(std::floor(yr.hi));
      for (int d = d0; d <= d1; ++d) {
        const double py = sy(d);
        out << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(py)
            << "\" x2=\"" << num(x0) << "\" y2=\"" << num(py)
            << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\">1e" << d << "</text>\n";
      }
    } else {
      for (double tv : linear_ticks(yr)) {
        const double py = sy(tv);
        out << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(py)
            << "\" x2=\"" << num(x0) << "\" y2=\"" << num(py)
            << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\">" << num(tv) << "</text>\n";
      }
    }
    out << "<text transform=\"translate(" << num(14) << " "
        << num(0.5 * (y0 + y1)) << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(panel.y_label) << "</text>\n";

    // Series
    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const auto& s = panel.series[si];
      const std::size_t stride =
          std::max<std::size_t>(1, (s.t.size() + kMaxPointsPerSeries - 1) /
                                       kMaxPointsPerSeries);
      out << "<polyline fill=\"none\" stroke=\"" << color_for(si)
          << "\" stroke-width=\"1.4\"";
      if (const char* dash = dash_for(s.style))
        out << " stroke-dasharray=\"" << dash << "\"";
      out << " points=\"";
      for (std::size_t i = 0; i < s.t.size(); i += stride) {
        out << num(sx(s.t[i])) << ',' << num(sy(transform_y(s.y[i]))) << ' ';
      }
      // Always include the final sample.
      if ((s.t.size() - 1) % stride != 0)
        out << num(sx(s.t.back())) << ',' << num(sy(transform_y(s.y.back())));
      out << "\"/>\n";
    }

    // Legend, top-right corner of the frame.
    const double lx = x1 - 170;
    double ly = y1 + 14;
    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const auto& s = panel.series[si];
      out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
          << num(lx + 30) << "\" y2=\"" << num(ly - 4) << "\" stroke=\""
          << color_for(si) << "\" stroke-width=\"1.4\"";
      if (const char* dash = dash_for(s.style))
        out << " stroke-dasharray=\"" << dash << "\"";
      out << "/>\n";
      out << "<text x=\"" << num(lx + 36) << "\" y=\"" << num(ly) << "\">"
          << escape(s.label) << "</text>\n";
      ly += 16;
    }
  }

  out << "</g>\n</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("emit_svg: cannot open " + path.string());
  f << out.str();
  f.flush();
  if (!f) throw IoError("emit_svg: write failed for " + path.string());
}

}  // namespace fte
