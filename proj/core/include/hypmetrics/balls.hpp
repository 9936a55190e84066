#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "hypmetrics/geom.hpp"
#include "hypmetrics/metrics.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

struct TraceOptions {
  double tol = 1e-12;
  /// Also locate the crossings after the first one along each ray. Needed for
  /// balls that are not starlike with respect to their center.
  bool all_crossings = false;
  /// Geometric samples per ray used to bracket crossings of non-s metrics.
  std::size_t scan_samples = 64;
  /// Section plane for n > 2, spanned by two orthonormal directions.
  /// Defaults to (e1, en).
  std::optional<std::pair<Point, Point>> plane;
};

/// Polyline approximation of the boundary of B_m(center, radius), one point
/// per ray in a plane section through the center.
struct BallTrace {
  Domain domain;
  MetricKind metric;
  Point center;
  double radius = 0.0;
  std::size_t rays = 0;
  Point axis_u;
  Point axis_v;
  double escape_bound = 0.0;
  /// First crossing along each ray; the escape point for truncated rays.
  std::vector<Point> polyline;
  std::vector<double> residuals;
  std::vector<std::size_t> truncated_rays;
  /// Later crossings, when requested.
  std::vector<Point> extra_crossings;
  std::vector<double> extra_residuals;

  Point direction(std::size_t ray) const;
  /// The polyline in section coordinates relative to the center.
  std::vector<Point> planar() const;
};

BallTrace trace_ball(const Domain& domain, MetricKind metric, const Point& center, double radius,
                     std::size_t rays, const TraceOptions& options = {});

struct StarlikeWitness {
  std::size_t ray = 0;
  double t1 = 0.0;
  double t2 = 0.0;
};

struct StarlikeReport {
  bool starlike = true;
  std::optional<StarlikeWitness> witness;
  /// Largest drop of m(center, .) seen along a ray (s-balls only).
  double max_violation = 0.0;
};

/// s-balls: m(center, center + t dir) must be nondecreasing in t up to the
/// boundary, checked on `steps` points per ray. Other metrics: every segment
/// from the center to a trace point must stay in the ball.
StarlikeReport starlike_check(const Domain& domain, MetricKind metric, const Point& center, double radius,
                              std::size_t rays, std::size_t steps, double tol = 1e-12);

/// First segment [center, p], p on the polyline, with an interior sample
/// rejected by `inside`. The witness holds the vertex index and the segment
/// parameters (t, 1).
std::optional<StarlikeWitness> find_segment_violation(const Point& center, const std::vector<Point>& polyline,
                                                      const std::function<bool(const Point&)>& inside,
                                                      std::size_t steps);

struct ConvexityReport {
  bool convex = false;
  /// Largest distance from a polyline vertex to the boundary of the hull.
  double max_deviation = 0.0;
  double tol = 0.0;
  Point witness;
  bool starlike = true;
  std::optional<StarlikeWitness> starlike_witness;
};

/// Throws UnboundedBall for traces with truncated rays. The default tolerance
/// is 1e-6 times the diameter of the trace.
ConvexityReport convexity_check(const BallTrace& trace, std::optional<double> tol = std::nullopt);

/// Same check on a bare closed planar polyline.
ConvexityReport convexity_check(const std::vector<Point>& polyline, std::optional<double> tol = std::nullopt);

struct ThresholdScan {
  std::vector<double> radii;
  std::vector<bool> convex;
  std::optional<double> last_convex;
  std::optional<double> first_nonconvex;
};

ThresholdScan convexity_threshold_scan(const Domain& domain, MetricKind metric, const Point& center,
                                       const std::vector<double>& r_grid, std::optional<double> tol = std::nullopt,
                                       std::size_t rays = 720);

}  // namespace hypmetrics
