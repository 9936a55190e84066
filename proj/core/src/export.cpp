#include "hypmetrics/export.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include <fmt/format.h>

#include "hypmetrics/errors.hpp"

namespace hypmetrics {

namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

struct Bounds {
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void add(double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  bool empty() const { return !(x0 <= x1); }
};

std::string num(double v) {
  // Avoid "-0.000000" so equal figures print equal bytes.
  const std::string s = fmt::format("{:.6f}", v);
  return s == "-0.000000" ? "0.000000" : s;
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<BallTrace>& traces) {
  const bool several = traces.size() > 1;
  out << (several ? "radius,x,y,residual\n" : "x,y,residual\n");
  for (const BallTrace& trace : traces) {
    for (std::size_t k = 0; k < trace.polyline.size(); ++k) {
      const Point& p = trace.polyline[k];
      if (several) out << fmt::format("{:.17g},", trace.radius);
      out << fmt::format("{:.17g},{:.17g},{:.6e}\n", dot(p, trace.axis_u), dot(p, trace.axis_v), trace.residuals[k]);
    }
  }
}

void write_curve_csv(std::ostream& out, const std::vector<Point>& polyline) {
  out << "y1,y2\n";
  for (const Point& p : polyline) out << fmt::format("{:.17g},{:.17g}\n", p[0], p[1]);
}

std::vector<SvgLayer> trace_layers(const BallTrace& trace) {
  std::vector<Point> planar;
  planar.reserve(trace.polyline.size());
  for (const Point& p : trace.polyline) planar.push_back(Point{dot(p, trace.axis_u), dot(p, trace.axis_v)});
  const std::string label = fmt::format("B_{}(r={:.6g})", to_string(trace.metric), trace.radius);
  if (trace.truncated_rays.empty()) return {SvgLayer{planar, true, label}};

  std::vector<bool> cut(planar.size(), false);
  for (std::size_t k : trace.truncated_rays) cut[k] = true;
  // Start right after a truncated ray so runs do not wrap around.
  const std::size_t n = planar.size();
  std::size_t start = 0;
  while (!cut[start]) ++start;
  std::vector<SvgLayer> layers;
  SvgLayer run{{}, false, label};
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t k = (start + i) % n;
    if (cut[k]) {
      if (run.points.size() >= 2) layers.push_back(run);
      run.points.clear();
    } else {
      run.points.push_back(planar[k]);
    }
  }
  return layers;
}

std::string render_svg(const SvgFigure& figure) {
  Bounds b;
  for (const SvgLayer& layer : figure.layers) {
    for (const Point& p : layer.points) b.add(p[0], p[1]);
  }
  for (const Point& p : figure.markers) b.add(p[0], p[1]);
  const Domain* domain = figure.domain ? &*figure.domain : nullptr;
  if (domain != nullptr && domain->dim() != 2) throw DimensionError("SVG figures are planar");
  if (domain != nullptr) {
    if (const auto* g = domain->get_if<PuncturedSpace>()) {
      for (const Point& p : g->obstacles) b.add(p[0], p[1]);
    } else if (const auto* g = domain->get_if<Polygon>()) {
      for (const Point& p : g->vertices) b.add(p[0], p[1]);
    } else if (domain->get_if<HalfSpace>()) {
      if (!b.empty()) b.add(b.x0, 0.0);
    } else {
      b.add(-1.0, -1.0);
      b.add(1.0, 1.0);
    }
  }
  if (b.empty()) b.add(0.0, 0.0);
  if (b.x1 - b.x0 == 0.0) {
    b.x0 -= 1.0;
    b.x1 += 1.0;
  }
  if (b.y1 - b.y0 == 0.0) {
    b.y0 -= 1.0;
    b.y1 += 1.0;
  }
  const double pad = 0.05 * std::max(b.x1 - b.x0, b.y1 - b.y0);
  const double vx = b.x0 - pad;
  const double vy = -b.y1 - pad;
  const double vw = b.x1 - b.x0 + 2.0 * pad;
  const double vh = b.y1 - b.y0 + 2.0 * pad;
  const double stroke = 0.003 * std::max(vw, vh);
  const int width = 800;
  const int height = static_cast<int>(std::lround(800.0 * vh / vw));

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">\n", width,
      height, num(vx), num(vy), num(vw), num(vh));
  svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", num(vx), num(vy),
                     num(vw), num(vh));

  if (domain != nullptr) {
    const std::string style = fmt::format("fill=\"none\" stroke=\"black\" stroke-width=\"{}\"", num(stroke));
    if (const auto* g = domain->get_if<PuncturedSpace>()) {
      const double arm = 0.015 * std::max(vw, vh);
      for (const Point& p : g->obstacles) {
        const double x = p[0];
        const double y = -p[1];
        svg += fmt::format("<path d=\"M {} {} L {} {} M {} {} L {} {}\" {}/>\n", num(x - arm), num(y - arm),
                           num(x + arm), num(y + arm), num(x - arm), num(y + arm), num(x + arm), num(y - arm), style);
      }
    } else if (domain->get_if<HalfSpace>()) {
      svg += fmt::format("<line x1=\"{}\" y1=\"0.000000\" x2=\"{}\" y2=\"0.000000\" {}/>\n", num(vx), num(vx + vw),
                         style);
    } else if (domain->get_if<UnitBall>()) {
      svg += fmt::format("<circle cx=\"0.000000\" cy=\"0.000000\" r=\"1.000000\" {}/>\n", style);
    } else if (const auto* g = domain->get_if<Polygon>()) {
      std::string d;
      for (std::size_t k = 0; k < g->vertices.size(); ++k) {
        d += fmt::format("{} {} {} ", k == 0 ? "M" : "L", num(g->vertices[k][0]), num(-g->vertices[k][1]));
      }
      svg += fmt::format("<path d=\"{}Z\" {}/>\n", d, style);
    }
  }

  std::size_t color = 0;
  std::string previous_label;
  for (const SvgLayer& layer : figure.layers) {
    if (layer.points.empty()) continue;
    if (!previous_label.empty() && layer.label != previous_label) ++color;
    previous_label = layer.label;
    std::string d;
    for (std::size_t k = 0; k < layer.points.size(); ++k) {
      d += fmt::format("{}{} {} {}", k == 0 ? "" : " ", k == 0 ? "M" : "L", num(layer.points[k][0]),
                       num(-layer.points[k][1]));
    }
    if (layer.closed) d += " Z";
    svg += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"><title>{}</title></path>\n", d,
                       kPalette[color % kPalette.size()], num(stroke), layer.label);
  }
  for (const Point& p : figure.markers) {
    svg += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>\n", num(p[0]), num(-p[1]),
                       num(2.0 * stroke));
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace hypmetrics
