#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "momlab/harness.hpp"

namespace momlab {

struct SvgSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  ///< (alpha, error); nonpositive values are skipped
};

struct SvgReference {
  double slope = 0.5;
  std::string label;
};

struct SvgFigure {
  std::string title;
  std::string x_label = "contamination level alpha";
  std::string y_label = "error quantile";
  std::vector<SvgSeries> series;
  std::optional<SvgReference> reference;  ///< drawn through the centroid of the first series
  std::string version;
};

/// Log-log plot with dashed series and a solid reference line. The output
/// depends only on the input, so identical inputs give identical bytes.
std::string render_svg(const SvgFigure& figure);

/// One series per (label, estimator) group in order of first appearance.
SvgFigure figure_from_records(const std::vector<ErrorQuantileRecord>& records, std::string title,
                              std::optional<SvgReference> reference,
                              SlopeStatistic statistic = SlopeStatistic::Quantile);

}  // namespace momlab
