#include "hypmetrics/halfspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "hypmetrics/errors.hpp"
#include "hypmetrics/geom.hpp"

namespace hypmetrics {

namespace {

constexpr double kDegenerateHeight = 1e-9;

void require_upper(const Point& x, const Point& y) {
  require_same_dim(x, y);
  if (!(x.last() > 0.0) || !(y.last() > 0.0)) {
    throw DomainError(fmt::format("{} and {} must lie in the upper half-space", to_string(x), to_string(y)));
  }
}

void require_plane(const Point& x, const Point& y) {
  if (x.dim() != 2 || y.dim() != 2) throw DimensionError("half-plane operations take 2D points");
}

void require_open_right_angle(double r) {
  if (!(r > 0.0 && r < std::numbers::pi / 2)) {
    throw RangeError(fmt::format("r = {} is outside (0, pi/2)", r));
  }
}

double focus_height(const Point& x, double z1) {
  const double dx = x[0] - z1;
  return (dx * dx + x[1] * x[1]) / (2.0 * x[1]);
}

bool lex_less(const Point& a, const Point& b) {
  const auto p = a.coords();
  const auto q = b.coords();
  return std::lexicographical_compare(p.begin(), p.end(), q.begin(), q.end());
}

}  // namespace

HorocyclePair horocycle_centers(const Point& x, const Point& y) {
  require_plane(x, y);
  require_upper(x, y);
  if (x == y) throw DegenerateInput("horocycle centers need x != y");
  const double x1 = x[0], x2 = x[1], y1 = y[0], y2 = y[1];

  if (std::abs(x2 - y2) < kDegenerateHeight * std::max(x2, y2)) {
    const double z1 = 0.5 * (x1 + y1);
    const Point z{z1, focus_height(x, z1)};
    return {z, z, true};
  }
  // (x2 - y2) z1^2 - 2 b z1 - c = 0 with the roots written to avoid cancellation.
  const double b = x2 * y1 - x1 * y2;
  const double s = std::sqrt(x2 * y2) * distance(x, y);
  const double d = x2 - y2;
  const double c = y2 * x1 * x1 - x2 * y1 * y1 - x2 * y2 * (y2 - x2);
  double plus;
  double minus;
  if (b >= 0.0) {
    plus = (b + s) / d;
    minus = -c / (b + s);
  } else {
    minus = (b - s) / d;
    plus = -c / (b - s);
  }
  return {Point{plus, focus_height(x, plus)}, Point{minus, focus_height(x, minus)}, false};
}

double v_halfplane(const Point& x0, const Point& y0) {
  require_plane(x0, y0);
  require_upper(x0, y0);
  if (x0 == y0) return 0.0;
  const Point& x = lex_less(y0, x0) ? y0 : x0;
  const Point& y = lex_less(y0, x0) ? x0 : y0;
  const HorocyclePair centers = horocycle_centers(x, y);
  double best = 0.0;
  for (const Point* z : {&centers.z_plus, &centers.z_minus}) {
    const Point foot{(*z)[0], 0.0};
    const double angle = angle_at(x, foot, y);
    if (angle > best) best = angle;
  }
  return best;
}

double v_halfspace(const Point& x0, const Point& y0) {
  require_upper(x0, y0);
  if (x0 == y0) return 0.0;
  const Point& x = lex_less(y0, x0) ? y0 : x0;
  const Point& y = lex_less(y0, x0) ? x0 : y0;
  if (x.dim() == 2) return v_halfplane(x, y);
  double h2 = 0.0;
  for (std::size_t k = 0; k + 1 < x.dim(); ++k) {
    const double d = y[k] - x[k];
    h2 += d * d;
  }
  return v_halfplane(Point{0.0, x.last()}, Point{std::sqrt(h2), y.last()});
}

double VBallCurve::right_branch(double y2) const {
  const double w = std::sqrt(y2) - 1.0 / std::cos(r);
  const double t = std::tan(r);
  return (t - w) * (t + w) / t;
}

double VBallCurve::left_branch(double y2) const { return -right_branch(y2); }

VBallCurve vball_curve(double r, std::size_t samples) {
  require_open_right_angle(r);
  if (samples < 8) throw RangeError("vball_curve needs at least 8 samples");
  const double s = std::sin(r);
  const double sec = 1.0 / std::cos(r);
  const double t = std::tan(r);
  VBallCurve curve;
  curve.r = r;
  curve.b1 = (1.0 - s) / (1.0 + s);
  curve.b2 = (1.0 + s) / (1.0 - s);

  // With sqrt(y2) = sec r - tan r cos(theta) the right branch is
  // y1 = tan r sin^2(theta), theta in [0, pi].
  std::vector<Point> right;
  right.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples - 1);
    const double sn = std::sin(theta);
    const double u = sec - t * std::cos(theta);
    right.push_back(Point{t * sn * sn, u * u});
  }
  right.front() = Point{0.0, curve.b1};
  right.back() = Point{0.0, curve.b2};

  curve.polyline = right;
  for (std::size_t k = samples - 2; k >= 1; --k) {
    curve.polyline.push_back(Point{-right[k][0], right[k][1]});
  }
  return curve;
}

Point from_normalized(const Point& x, const Point& q, std::size_t axis) {
  if (q.dim() != 2) throw DimensionError("normalized points are 2D");
  if (axis + 1 >= x.dim()) throw DimensionError("axis must be a horizontal coordinate");
  if (!(x.last() > 0.0)) throw DomainError("center must lie in the upper half-space");
  Point p = x;
  p[axis] += x.last() * q[0];
  p[x.dim() - 1] = x.last() * q[1];
  return p;
}

VBallSandwich vball_sandwich(const Point& x, double r) {
  require_open_right_angle(r);
  require_finite(x);
  const double h = x.last();
  if (!(h > 0.0)) throw DomainError("center must lie in the upper half-space");
  const double t = std::tan(r);
  const double c = std::cos(r);
  const double sec2 = 1.0 / (c * c);
  const std::size_t n = x.dim();
  const Point en = Point::basis(n, n - 1);
  VBallSandwich balls;
  balls.inner1 = {along(x, en, (sec2 - 1.0) * h), h * t};
  balls.inner2 = {x, h * std::sin(r)};
  balls.outer1 = {along(x, en, 2.0 * h * t * t), 2.0 * h * t / c};
  balls.outer2 = {x, 2.0 * h * (t / c + t * t)};
  return balls;
}

KinkTangents kink_and_tangents(double r) {
  require_open_right_angle(r);
  const double c = std::cos(r);
  const double sn = std::sin(r);
  const double sec = 1.0 / c;
  const double t = std::tan(r);
  KinkTangents k;
  k.slope_f2_at_b1 = (1.0 + sn) / c;
  k.slope_f1_at_b1 = -k.slope_f2_at_b1;
  k.slope_f2_at_b2 = -c / (1.0 + sn);
  k.slope_l1 = t / (-sec * sec + t * sec + 1.0);
  k.slope_l2 = -t / (sec * sec + t * sec - 1.0);
  return k;
}

}  // namespace hypmetrics
