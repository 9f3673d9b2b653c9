#include "dminimax/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace dminimax {

namespace {

constexpr int kWidth = 820;
constexpr int kHeight = 520;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

std::string svg_line_chart(const std::string& title,
                           const std::vector<SvgSeries>& series, bool log_y) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double yv = s.y[i];
      if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
      if (log_y && yv <= 0.0) continue;
      if (log_y) yv = std::log10(yv);
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
    }
  }
  if (!(xmin < xmax)) { xmin -= 1.0; xmax = xmin + 2.0; }
  if (!(ymin < ymax)) { ymin -= 1.0; ymax = ymin + 2.0; }

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) {
    return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w;
  };
  auto py = [&](double yv) {
    return kMarginTop + (ymax - yv) / (ymax - ymin) * plot_h;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
     << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // frame and grid lines with value labels
  os << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
     << num(plot_w) << "\" height=\"" << num(plot_h)
     << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  for (int g = 0; g <= 5; ++g) {
    const double fx = xmin + (xmax - xmin) * g / 5.0;
    const double fy = ymin + (ymax - ymin) * g / 5.0;
    os << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << kMarginTop
       << "\" x2=\"" << num(px(fx)) << "\" y2=\"" << num(kMarginTop + plot_h)
       << "\" stroke=\"#dddddd\"/>\n";
    os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << num(py(fy))
       << "\" x2=\"" << num(kMarginLeft + plot_w) << "\" y2=\"" << num(py(fy))
       << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << num(px(fx)) << "\" y=\"" << kHeight - 28
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"11\">" << sci(fx) << "</text>\n";
    os << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << num(py(fy) + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << (log_y ? ("1e" + sci(fy)) : sci(fy)) << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"12\">iteration</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double yv = s.y[i];
      if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
      if (log_y) {
        if (yv <= 0.0) continue;
        yv = std::log10(yv);
      }
      if (!first) os << " ";
      os << num(px(s.x[i])) << "," << num(py(yv));
      first = false;
    }
    os << "\"/>\n";
    os << "<text x=\"" << kMarginLeft + 10 << "\" y=\""
       << kMarginTop + 18 + 16 * static_cast<int>(si)
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
       << "\">" << s.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dminimax
