#pragma once

#include <cstddef>
#include <vector>

#include "hypmetrics/point.hpp"

namespace hypmetrics {

/// Centers of the two horocycles through x and y in the upper half-plane,
/// i.e. the intersections of the parabolas with foci x, y and directrix the
/// real axis.
struct HorocyclePair {
  Point z_plus;
  Point z_minus;
  // x2 and y2 agree to 1e-9 relative; both slots hold the midpoint center.
  bool degenerate = false;
};

HorocyclePair horocycle_centers(const Point& x, const Point& y);

/// Visual angle metric of the upper half-plane: the larger of the angles
/// subtended at the projections of the two horocycle centers.
double v_halfplane(const Point& x, const Point& y);

/// Visual angle metric of the upper half-space, reduced to the half-plane
/// through x and y perpendicular to the boundary.
double v_halfspace(const Point& x, const Point& y);

struct EuclideanBall {
  Point center;
  double radius = 0.0;
};

/// Boundary of B_v(i, r) in the upper half-plane. The right branch is
/// y1 = f2(y2) and the left one its mirror f1 = -f2, for y2 in [b1, b2].
struct VBallCurve {
  double r = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  /// Closed loop, counterclockwise from (0, b1): right branch up to (0, b2),
  /// then the left branch back down. The first point is not repeated.
  std::vector<Point> polyline;

  double left_branch(double y2) const;
  double right_branch(double y2) const;
};

/// `samples` points per branch, clustered toward the kinks at b1 and b2.
VBallCurve vball_curve(double r, std::size_t samples);

/// Image of a point of the normalized picture (center i) under the similarity
/// taking i to x. For n > 2 the plane is spanned by e_{axis+1} and e_n.
Point from_normalized(const Point& x, const Point& q, std::size_t axis = 0);

/// Euclidean balls squeezing B_v(x, r) in the upper half-space.
struct VBallSandwich {
  EuclideanBall inner1;  // tangent to the v-ball boundary at its top
  EuclideanBall inner2;  // concentric
  EuclideanBall outer1;  // smallest containing ball
  EuclideanBall outer2;  // concentric
};

VBallSandwich vball_sandwich(const Point& x, double r);

/// One-sided slopes dy1/dy2 of the curve branches at the bottom kink, and the
/// slopes of the two chord lines of the triangle squeezed between the curve
/// and the containing circle.
struct KinkTangents {
  double slope_f1_at_b1 = 0.0;
  double slope_f2_at_b1 = 0.0;
  double slope_f2_at_b2 = 0.0;
  double slope_l1 = 0.0;
  double slope_l2 = 0.0;
};

KinkTangents kink_and_tangents(double r);

}  // namespace hypmetrics
