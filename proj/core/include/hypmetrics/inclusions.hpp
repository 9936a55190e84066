#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypmetrics/geom.hpp"
#include "hypmetrics/metrics.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

/// Sharp radius t(r) with B_m(x, t) inside B_v(x, r) in R^n minus {0}.
/// `norm_x` matters only for the Euclidean and chordal kinds.
double best_radius(MetricKind metric, double norm_x, double r);

struct BallSpec {
  MetricKind metric = MetricKind::V;
  double radius = 0.0;
};

struct InclusionReport {
  std::string label;
  BallSpec inner;
  BallSpec outer;
  bool holds = false;
  /// Smallest outer_radius - m_outer(x, y) over inner-boundary samples y.
  double min_margin = 0.0;
  Point worst_point;
  double sharpness_gap = 0.0;
  /// Some inner-boundary sample came within 1e-6 d(x) of dG; those samples
  /// are skipped and the gap is capped at 0 (v approaches its upper limit
  /// near a boundary point of the punctured space).
  bool boundary_contact = false;
  /// Angle in radians between worst_point - x and the nearest predicted extremal point,
  /// when a prediction exists.
  std::optional<double> locus_error;
  std::size_t samples = 0;
  std::vector<std::string> notes;
};

struct InclusionOptions {
  double tol = 1e-9;
  /// Per-ray geometric samples used to find every crossing of inner balls
  /// that are not starlike.
  std::size_t scan_samples = 96;
};

/// Checks B_inner(x, t) inside B_outer(x, r) on `samples` points of the inner
/// boundary.
InclusionReport verify_inclusion(const Domain& domain, BallSpec inner, BallSpec outer, const Point& x,
                                 std::size_t samples, const InclusionOptions& options = {});

/// Points of the inner boundary where the outer v-metric reaches r, as the
/// extremal cases of the sharp radii predict (section plane through x and the
/// puncture). Empty when no prediction applies.
std::vector<Point> predicted_extremal(MetricKind metric, const Point& x, const Point& puncture, double r,
                                      const Point& plane_hint);

struct HalfspaceSuite {
  /// inner1, inner2, outer1, outer2, in that order. Margins are measured in
  /// units of x_n.
  std::vector<InclusionReport> reports;
  /// Signed distances of the curve endpoints (0, b1), (0, b2) from the
  /// boundary of outer1, in units of x_n.
  double endpoint_offset_b1 = 0.0;
  double endpoint_offset_b2 = 0.0;
};

HalfspaceSuite halfspace_inclusion_suite(const Point& x, double r, std::size_t samples, double tol = 1e-9);

struct TriangleViolation {
  Point x;
  Point y;
  Point z;
  /// p(x, z) - p(x, y) - p(y, z).
  double excess = 0.0;
  std::size_t trial = 0;
};

/// Random search for a triple breaking the triangle inequality of p_G.
std::optional<TriangleViolation> p_triangle_experiment(const Domain& domain, std::size_t trials,
                                                       std::uint64_t seed);

}  // namespace hypmetrics
