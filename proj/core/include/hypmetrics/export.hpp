#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hypmetrics/balls.hpp"
#include "hypmetrics/geom.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

/// One row "x,y,residual" per ray, in section-plane coordinates. Several
/// traces share one table with a leading radius column.
void write_trace_csv(std::ostream& out, const std::vector<BallTrace>& traces);

/// One row "y1,y2" per polyline point.
void write_curve_csv(std::ostream& out, const std::vector<Point>& polyline);

struct SvgLayer {
  std::vector<Point> points;
  bool closed = true;
  std::string label;
};

struct SvgFigure {
  /// Obstacles are drawn as crosses; the other boundaries as lines or curves.
  std::optional<Domain> domain;
  std::vector<SvgLayer> layers;
  std::vector<Point> markers;
};

/// Layers of a trace: one closed path, or the runs between truncated rays as
/// open paths.
std::vector<SvgLayer> trace_layers(const BallTrace& trace);

/// Deterministic SVG: the view box fits every layer and marker with 5%
/// padding, and the y axis points up.
std::string render_svg(const SvgFigure& figure);

}  // namespace hypmetrics
