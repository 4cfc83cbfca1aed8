#include "momlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace momlab {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 520.0;  // right edge of the plot area; legend follows
constexpr double kTop = 40.0;
constexpr double kBottom = 420.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

std::string decade_label(int e) {
  if (e == 0) return "1";
  if (e == 1) return "10";
  return "1e" + std::to_string(e);
}

}  // namespace

std::string render_svg(const SvgFigure& figure) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : figure.series) {
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0 && y > 0.0)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmin <= xmax)) {
    xmin = 1e-3;
    xmax = 1e-1;
    ymin = 1e-3;
    ymax = 1.0;
  }
  int x0 = static_cast<int>(std::floor(std::log10(xmin)));
  int x1 = static_cast<int>(std::ceil(std::log10(xmax)));
  int y0 = static_cast<int>(std::floor(std::log10(ymin)));
  int y1 = static_cast<int>(std::ceil(std::log10(ymax)));
  if (x1 <= x0) ++x1;
  if (y1 <= y0) ++y1;

  auto px = [&](double x) { return kLeft + (std::log10(x) - x0) / (x1 - x0) * (kRight - kLeft); };
  auto py = [&](double y) { return kBottom - (std::log10(y) - y0) / (y1 - y0) * (kBottom - kTop); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- momlab " << escape(figure.version) << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth) << "\" height=\""
     << fixed(kHeight) << "\" viewBox=\"0 0 " << fixed(kWidth) << ' ' << fixed(kHeight)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<defs><clipPath id=\"plot\"><rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop)
     << "\" width=\"" << fixed(kRight - kLeft) << "\" height=\"" << fixed(kBottom - kTop)
     << "\"/></clipPath></defs>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed((kLeft + kRight) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-size=\"14\">" << escape(figure.title) << "</text>\n";

  // grid and ticks at every decade, minor ticks at 2..9
  for (int e = x0; e <= x1; ++e) {
    const double x = px(std::pow(10.0, e));
    os << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(x)
       << "\" y2=\"" << fixed(kBottom) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(kBottom + 18) << "\" text-anchor=\"middle\">"
       << decade_label(e) << "</text>\n";
    for (int j = 2; e < x1 && j <= 9; ++j) {
      const double xm = px(j * std::pow(10.0, e));
      os << "<line x1=\"" << fixed(xm) << "\" y1=\"" << fixed(kBottom) << "\" x2=\"" << fixed(xm)
         << "\" y2=\"" << fixed(kBottom - 4) << "\" stroke=\"black\"/>\n";
    }
  }
  for (int e = y0; e <= y1; ++e) {
    const double y = py(std::pow(10.0, e));
    os << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(kRight)
       << "\" y2=\"" << fixed(y) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">"
       << decade_label(e) << "</text>\n";
    for (int j = 2; e < y1 && j <= 9; ++j) {
      const double ym = py(j * std::pow(10.0, e));
      os << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(ym) << "\" x2=\"" << fixed(kLeft + 4)
         << "\" y2=\"" << fixed(ym) << "\" stroke=\"black\"/>\n";
    }
  }
  os << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\""
     << fixed(kRight - kLeft) << "\" height=\"" << fixed(kBottom - kTop)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << fixed((kLeft + kRight) / 2) << "\" y=\"" << fixed(kBottom + 40)
     << "\" text-anchor=\"middle\">" << escape(figure.x_label) << "</text>\n";
  os << "<text x=\"20\" y=\"" << fixed((kTop + kBottom) / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << fixed((kTop + kBottom) / 2)
     << ")\">" << escape(figure.y_label) << "</text>\n";

  double legend_y = kTop + 10;
  auto legend = [&](const std::string& color, const char* dash, const std::string& text) {
    os << "<line x1=\"" << fixed(kRight + 16) << "\" y1=\"" << fixed(legend_y) << "\" x2=\""
       << fixed(kRight + 46) << "\" y2=\"" << fixed(legend_y) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"" << dash << "/>\n";
    os << "<text x=\"" << fixed(kRight + 52) << "\" y=\"" << fixed(legend_y + 4)
       << "\" font-size=\"10\">" << escape(text) << "</text>\n";
    legend_y += 18;
  };

  os << "<g clip-path=\"url(#plot)\">\n";
  for (std::size_t i = 0; i < figure.series.size(); ++i) {
    const auto& s = figure.series[i];
    const std::string color = kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\" stroke-dasharray=\"6 4\" points=\"";
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0 && y > 0.0)) continue;
      os << (first ? "" : " ") << fixed(px(x)) << ',' << fixed(py(y));
      first = false;
    }
    os << "\"/>\n";
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0 && y > 0.0)) continue;
      os << "<circle cx=\"" << fixed(px(x)) << "\" cy=\"" << fixed(py(y)) << "\" r=\"2.5\" fill=\""
         << color << "\"/>\n";
    }
  }
  if (figure.reference && !figure.series.empty()) {
    double sx = 0.0, sy = 0.0;
    int count = 0;
    for (const auto& [x, y] : figure.series.front().points) {
      if (!(x > 0.0 && y > 0.0)) continue;
      sx += std::log10(x);
      sy += std::log10(y);
      ++count;
    }
    if (count > 0) {
      const double cx = sx / count, cy = sy / count;
      const double slope = figure.reference->slope;
      auto at = [&](double lx) { return std::pow(10.0, cy + slope * (lx - cx)); };
      os << "<line x1=\"" << fixed(px(std::pow(10.0, x0))) << "\" y1=\"" << fixed(py(at(x0)))
         << "\" x2=\"" << fixed(px(std::pow(10.0, x1))) << "\" y2=\"" << fixed(py(at(x1)))
         << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
  }
  os << "</g>\n";

  for (std::size_t i = 0; i < figure.series.size(); ++i)
    legend(kPalette[i % (sizeof kPalette / sizeof kPalette[0])], " stroke-dasharray=\"6 4\"",
           figure.series[i].name);
  if (figure.reference) legend("black", "", figure.reference->label);
  os << "</svg>\n";
  return os.str();
}

SvgFigure figure_from_records(const std::vector<ErrorQuantileRecord>& records, std::string title,
                              std::optional<SvgReference> reference, SlopeStatistic statistic) {
  SvgFigure fig;
  fig.title = std::move(title);
  fig.reference = std::move(reference);
  fig.y_label = statistic == SlopeStatistic::Quantile ? "(1-delta) error quantile" : "median error";
  std::set<std::string> labels;
  for (const auto& r : records) labels.insert(r.label);
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.label, r.estimator);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, fig.series.size()).first;
      fig.series.push_back({labels.size() > 1 ? r.label + ": " + r.estimator : r.estimator, {}});
    }
    fig.series[it->second].points.emplace_back(
        r.alpha, statistic == SlopeStatistic::Quantile ? r.error_q : r.error_median);
  }
  return fig;
}

}  // namespace momlab
