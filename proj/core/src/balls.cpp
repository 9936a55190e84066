#include "hypmetrics/balls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "hypmetrics/errors.hpp"

namespace hypmetrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ball_excess(const Domain& domain, MetricKind metric, const Point& center, double radius, const Point& p) {
  if (!domain.contains(p)) return kInf;
  return evaluate(metric, domain, center, p) - radius;
}

void require_radius(MetricKind metric, double radius) {
  const double bound = metric_upper_bound(metric);
  if (!(radius > 0.0) || radius > bound || !std::isfinite(radius)) {
    throw RangeError(fmt::format("radius {} is outside (0, {}] for the {} metric", radius, bound, to_string(metric)));
  }
}

std::pair<Point, Point> section_plane(const Point& center, const TraceOptions& options) {
  const std::size_t n = center.dim();
  if (!options.plane) return {Point::basis(n, 0), Point::basis(n, n - 1)};
  const auto& [u, v] = *options.plane;
  require_same_dim(u, center);
  require_same_dim(v, center);
  if (std::abs(norm(u) - 1.0) > 1e-12 || std::abs(norm(v) - 1.0) > 1e-12 || std::abs(dot(u, v)) > 1e-12) {
    throw RangeError("section plane needs two orthonormal directions");
  }
  return {u, v};
}

struct Crossing {
  double t;
  double residual;
};

// Bisection on [lo, hi] with g(lo) < 0 <= g(hi); g may be +inf at hi.
Crossing bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
  double flo = g(lo);
  double fhi = g(hi);
  for (int it = 0; it < 200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = g(mid);
    if (std::abs(fm) <= tol) return {mid, std::abs(fm)};
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  if (std::isfinite(fhi) && std::abs(fhi) < std::abs(flo)) return {hi, std::abs(fhi)};
  return {lo, std::abs(flo)};
}

// Bisection for a crossing from inside (g < 0 at `in`) to outside, where the
// outside end may be nearer to the center.
Crossing bisect_between(const std::function<double(double)>& g, double in, double out, double tol) {
  if (in < out) return bisect(g, in, out, tol);
  const auto flipped = [&](double t) { return g(in + out - t); };
  const Crossing c = bisect(flipped, out, in, tol);
  return {in + out - c.t, c.residual};
}

}  // namespace

Point BallTrace::direction(std::size_t ray) const {
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(ray) / static_cast<double>(rays);
  return axis_u * std::cos(theta) + axis_v * std::sin(theta);
}

std::vector<Point> BallTrace::planar() const {
  std::vector<Point> out;
  out.reserve(polyline.size());
  for (const Point& p : polyline) {
    const Point d = p - center;
    out.push_back(Point{dot(d, axis_u), dot(d, axis_v)});
  }
  return out;
}

BallTrace trace_ball(const Domain& domain, MetricKind metric, const Point& center, double radius, std::size_t rays,
                     const TraceOptions& options) {
  if (center.dim() != domain.dim()) throw DimensionError("center and domain dimensions differ");
  const double dc = dist_to_boundary(domain, center);
  require_radius(metric, radius);
  if (rays < 16) throw RangeError("trace_ball needs at least 16 rays");
  if (!(options.tol > 0.0)) throw RangeError("trace tolerance must be positive");
  if (options.scan_samples < 8) throw RangeError("scan_samples must be at least 8");

  const auto [u, v] = section_plane(center, options);
  BallTrace trace{domain, metric, center, radius, rays, u, v, 0.0, {}, {}, {}, {}, {}};
  trace.escape_bound = 1e6 * (1.0 + norm(center) + dc);
  const double t_max = trace.escape_bound;
  trace.polyline.reserve(rays);
  trace.residuals.reserve(rays);

  for (std::size_t ray = 0; ray < rays; ++ray) {
    const Point dir = trace.direction(ray);
    const auto g = [&](double t) { return ball_excess(domain, metric, center, radius, along(center, dir, t)); };

    double t0 = 1e-3 * dc;
    for (int k = 0; k < 1000 && g(t0) >= 0.0; ++k) t0 *= 0.5;

    std::optional<Crossing> first;
    if (metric == MetricKind::S && !options.all_crossings) {
      double lo = t0;
      double hi = 2.0 * t0;
      while (hi < t_max && g(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
      }
      if (hi >= t_max) hi = t_max;
      if (g(hi) >= 0.0) first = bisect(g, lo, hi, options.tol);
    } else {
      const std::size_t m = options.scan_samples;
      const double ratio = std::pow(t_max / t0, 1.0 / static_cast<double>(m - 1));
      double t_prev = t0;
      double f_prev = g(t0);
      for (std::size_t k = 1; k < m; ++k) {
        const double t = k + 1 == m ? t_max : t0 * std::pow(ratio, static_cast<double>(k));
        const double f = g(t);
        const bool was_inside = f_prev < 0.0;
        const bool is_inside = f < 0.0;
        if (was_inside != is_inside) {
          const Crossing c = was_inside ? bisect_between(g, t_prev, t, options.tol)
                                        : bisect_between(g, t, t_prev, options.tol);
          if (!first) {
            first = c;
            if (!options.all_crossings) break;
          } else {
            trace.extra_crossings.push_back(along(center, dir, c.t));
            trace.extra_residuals.push_back(c.residual);
          }
        }
        t_prev = t;
        f_prev = f;
      }
    }

    if (first) {
      trace.polyline.push_back(along(center, dir, first->t));
      trace.residuals.push_back(first->residual);
    } else {
      trace.polyline.push_back(along(center, dir, t_max));
      trace.residuals.push_back(std::abs(g(t_max)));
      trace.truncated_rays.push_back(ray);
    }
  }
  return trace;
}

std::optional<StarlikeWitness> find_segment_violation(const Point& center, const std::vector<Point>& polyline,
                                                      const std::function<bool(const Point&)>& inside,
                                                      std::size_t steps) {
  if (steps < 2) throw RangeError("segment test needs at least 2 steps");
  for (std::size_t i = 0; i < polyline.size(); ++i) {
    const Point dir = polyline[i] - center;
    for (std::size_t k = 1; k < steps; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(steps);
      if (!inside(along(center, dir, t))) return StarlikeWitness{i, t, 1.0};
    }
  }
  return std::nullopt;
}

StarlikeReport starlike_check(const Domain& domain, MetricKind metric, const Point& center, double radius,
                              std::size_t rays, std::size_t steps, double tol) {
  if (steps < 2) throw RangeError("starlike_check needs at least 2 steps");
  const BallTrace trace = trace_ball(domain, metric, center, radius, rays);
  StarlikeReport report;
  if (metric != MetricKind::S) {
    report.witness = find_segment_violation(
        center, trace.polyline,
        [&](const Point& p) { return ball_excess(domain, metric, center, radius, p) < tol; }, steps);
    report.starlike = !report.witness;
    return report;
  }
  for (std::size_t ray = 0; ray < rays; ++ray) {
    const Point dir = trace.direction(ray);
    const double t_end = distance(trace.polyline[ray], center);
    double running = -kInf;
    double running_t = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
      const double t = t_end * static_cast<double>(k) / static_cast<double>(steps);
      const Point p = along(center, dir, t);
      if (!domain.contains(p)) break;
      const double value = s_metric(domain, center, p);
      const double drop = running - value;
      if (drop > report.max_violation) report.max_violation = drop;
      if (drop > tol && report.starlike) {
        report.starlike = false;
        report.witness = StarlikeWitness{ray, running_t, t};
      }
      if (value > running) {
        running = value;
        running_t = t;
      }
    }
  }
  return report;
}

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point e = b - a;
  const double len2 = norm_squared(e);
  const double u = len2 > 0.0 ? std::clamp(dot(p - a, e) / len2, 0.0, 1.0) : 0.0;
  return distance(p, along(a, e, u));
}

}  // namespace

ConvexityReport convexity_check(const std::vector<Point>& polyline, std::optional<double> tol) {
  if (polyline.size() < 3) throw DegenerateInput("convexity needs at least 3 polyline points");
  for (const Point& p : polyline) {
    if (p.dim() != 2) throw DimensionError("convexity_check works on planar polylines");
  }
  const std::vector<Point> hull = convex_hull(polyline);
  double diameter = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    for (std::size_t j = i + 1; j < hull.size(); ++j) diameter = std::max(diameter, distance(hull[i], hull[j]));
  }
  ConvexityReport report;
  report.tol = tol.value_or(1e-6 * diameter);
  report.witness = polyline.front();
  for (const Point& p : polyline) {
    double dev = kInf;
    for (std::size_t i = 0; i < hull.size() && dev > 0.0; ++i) {
      dev = std::min(dev, segment_distance(p, hull[i], hull[(i + 1) % hull.size()]));
    }
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.witness = p;
    }
  }
  report.convex = report.max_deviation <= report.tol;
  return report;
}

ConvexityReport convexity_check(const BallTrace& trace, std::optional<double> tol) {
  if (!trace.truncated_rays.empty()) {
    throw UnboundedBall(fmt::format("{} of {} rays escaped; the ball is unbounded", trace.truncated_rays.size(),
                                    trace.rays));
  }
  ConvexityReport report = convexity_check(trace.planar(), tol);
  report.witness = along(trace.center, trace.axis_u, report.witness[0]) + trace.axis_v * report.witness[1];
  report.starlike_witness = find_segment_violation(
      trace.center, trace.polyline,
      [&](const Point& p) { return ball_excess(trace.domain, trace.metric, trace.center, trace.radius, p) < 1e-9; },
      16);
  report.starlike = !report.starlike_witness;
  return report;
}

ThresholdScan convexity_threshold_scan(const Domain& domain, MetricKind metric, const Point& center,
                                       const std::vector<double>& r_grid, std::optional<double> tol,
                                       std::size_t rays) {
  if (r_grid.empty()) throw RangeError("threshold scan needs a nonempty radius grid");
  if (!std::is_sorted(r_grid.begin(), r_grid.end())) throw RangeError("radius grid must be ascending");
  ThresholdScan scan;
  for (double r : r_grid) {
    const BallTrace trace = trace_ball(domain, metric, center, r, rays);
    const bool convex = convexity_check(trace, tol).convex;
    scan.radii.push_back(r);
    scan.convex.push_back(convex);
    if (convex) scan.last_convex = r;
    if (!convex && !scan.first_nonconvex) scan.first_nonconvex = r;
  }
  return scan;
}

}  // namespace hypmetrics
