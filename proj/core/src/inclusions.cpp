#include "hypmetrics/inclusions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "hypmetrics/balls.hpp"
#include "hypmetrics/errors.hpp"
#include "hypmetrics/halfspace.hpp"

namespace hypmetrics {

namespace {

constexpr double kContactScale = 1e-6;

// Orthonormal pair: `lead` normalized and the part of `hint` orthogonal to it
// (another axis when `hint` is parallel).
std::pair<Point, Point> plane_through(const Point& lead, const Point& hint) {
  const Point u = lead / norm(lead);
  Point v = hint - u * dot(hint, u);
  if (norm(v) < 1e-8 * norm(hint)) {
    for (std::size_t axis = 0; axis < u.dim(); ++axis) {
      v = Point::basis(u.dim(), axis);
      v -= u * dot(v, u);
      if (norm(v) > 0.5) break;
    }
  }
  return {u, v / norm(v)};
}

std::optional<Point> single_puncture(const Domain& domain) {
  const auto* g = domain.get_if<PuncturedSpace>();
  if (g == nullptr || g->obstacles.size() != 1) return std::nullopt;
  return g->obstacles.front();
}

std::pair<Point, Point> section_for(const Domain& domain, const Point& x) {
  const std::size_t n = x.dim();
  const Point hint = Point::basis(n, n - 1);
  if (const auto c = single_puncture(domain)) {
    if (!(x == *c)) return plane_through(x - *c, n == 2 ? Point::basis(n, 1) : hint);
  }
  return {Point::basis(n, 0), hint};
}

struct Tally {
  double min_margin = std::numeric_limits<double>::infinity();
  Point worst;
  bool contact = false;
  std::size_t count = 0;
};

// Inner-ball boundary in the plane through the puncture c and x, traced along
// circles |y - c| = rho. For s, j, k, p and q the value m(x, y) at fixed rho
// grows with the polar angle theta of y about c (measured from x), so each
// circle meets the boundary in at most one theta in (0, pi), and the outer v
// value there is theta itself. The rho grid is geometric and the best sample
// is refined by golden-section search in log rho.
bool polar_metric(MetricKind m) {
  return m == MetricKind::S || m == MetricKind::J || m == MetricKind::K || m == MetricKind::P ||
         m == MetricKind::Q;
}

std::vector<Point> polar_boundary(const Domain& domain, MetricKind metric, const Point& c, const Point& x,
                                  double t, std::size_t samples, const Point& u, const Point& v) {
  const double a = distance(x, c);
  const auto at = [&](double rho, double theta) { return c + rho * (u * std::cos(theta) + v * std::sin(theta)); };
  const auto excess = [&](double rho, double theta) { return evaluate(metric, domain, x, at(rho, theta)) - t; };

  // The circle meets the ball iff its point on the ray through x does.
  const double floor = 1e-12 * a;
  const double ceiling = 1e9 * a;
  const auto radial_edge = [&](double inside, double outside) {
    for (int it = 0; it < 200; ++it) {
      const double mid = std::sqrt(inside * outside);
      if (mid == inside || mid == outside) break;
      (excess(mid, 0.0) < 0.0 ? inside : outside) = mid;
    }
    return inside;
  };
  const double rho_lo = excess(floor, 0.0) < 0.0 ? floor : radial_edge(a, floor);
  const double rho_hi = excess(ceiling, 0.0) < 0.0 ? ceiling : radial_edge(a, ceiling);

  // theta*(rho): the boundary angle on the circle, pi when the whole circle is inside.
  const auto crossing = [&](double rho) {
    if (excess(rho, std::numbers::pi) < 0.0) return std::numbers::pi;
    double lo = 0.0;
    double hi = std::numbers::pi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (excess(rho, mid) < 0.0 ? lo : hi) = mid;
    }
    return lo;
  };

  std::vector<double> log_rho(samples);
  std::vector<double> theta(samples);
  const double l0 = std::log(rho_lo);
  const double l1 = std::log(rho_hi);
  std::size_t best = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    log_rho[k] = l0 + (l1 - l0) * static_cast<double>(k) / static_cast<double>(samples - 1);
    theta[k] = crossing(std::exp(log_rho[k]));
    if (theta[k] > theta[best]) best = k;
  }
  std::vector<Point> points;
  points.reserve(samples + 1);
  for (std::size_t k = 0; k < samples; ++k) points.push_back(at(std::exp(log_rho[k]), theta[k]));

  double lo = log_rho[best > 0 ? best - 1 : 0];
  double hi = log_rho[std::min(best + 1, samples - 1)];
  constexpr double kInvPhi = 0.6180339887498948482;
  double p = hi - kInvPhi * (hi - lo);
  double q = lo + kInvPhi * (hi - lo);
  double fp = crossing(std::exp(p));
  double fq = crossing(std::exp(q));
  for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    if (fp >= fq) {
      hi = q;
      q = p;
      fq = fp;
      p = hi - kInvPhi * (hi - lo);
      fp = crossing(std::exp(p));
    } else {
      lo = p;
      p = q;
      fp = fq;
      q = lo + kInvPhi * (hi - lo);
      fq = crossing(std::exp(q));
    }
  }
  const double refined = fp >= fq ? p : q;
  points.push_back(at(std::exp(refined), std::max(fp, fq)));
  return points;
}

}  // namespace

double best_radius(MetricKind metric, double norm_x, double r) {
  if (!(r > 0.0 && r <= std::numbers::pi)) throw RangeError(fmt::format("r = {} is outside (0, pi]", r));
  if (!(norm_x > 0.0) || !std::isfinite(norm_x)) throw RangeError("|x| must be positive and finite");
  const double s = std::sin(r / 2.0);
  switch (metric) {
    case MetricKind::S: return s;
    case MetricKind::J: return std::log1p(2.0 * s);
    case MetricKind::K: return r;
    case MetricKind::P: return s / std::sqrt(s * s + 1.0);
    case MetricKind::Euclidean: return r <= std::numbers::pi / 2 ? norm_x * std::sin(r) : norm_x;
    case MetricKind::Q: {
      const double a2 = 1.0 + norm_x * norm_x;
      return std::min(2.0 * norm_x * s / a2, norm_x / std::sqrt(a2));
    }
    case MetricKind::V: break;
  }
  throw UnsupportedMetric(fmt::format("no sharp radius for the {} metric", to_string(metric)));
}

std::vector<Point> predicted_extremal(MetricKind metric, const Point& x, const Point& puncture, double r,
                                      const Point& plane_hint) {
  const Point rel = x - puncture;
  const double a = norm(rel);
  if (a == 0.0) return {};
  double radius = a;
  switch (metric) {
    case MetricKind::S:
    case MetricKind::J:
    case MetricKind::K:
    case MetricKind::P: break;
    case MetricKind::Euclidean:
      if (r >= std::numbers::pi / 2) return {};
      radius = a * std::cos(r);
      break;
    case MetricKind::Q: {
      const double a2 = 1.0 + a * a;
      if (2.0 * a * std::sin(r / 2.0) / a2 > a / std::sqrt(a2)) return {};
      break;
    }
    case MetricKind::V: return {};
  }
  const auto [u, v] = plane_through(rel, plane_hint);
  return {puncture + radius * (u * std::cos(r) + v * std::sin(r)),
          puncture + radius * (u * std::cos(r) - v * std::sin(r))};
}

InclusionReport verify_inclusion(const Domain& domain, BallSpec inner, BallSpec outer, const Point& x,
                                 std::size_t samples, const InclusionOptions& options) {
  const double dx = dist_to_boundary(domain, x);
  if (samples < 16) throw RangeError("verify_inclusion needs at least 16 samples");
  if (!(outer.radius > 0.0) || outer.radius > metric_upper_bound(outer.metric)) {
    throw RangeError(fmt::format("outer radius {} is out of range", outer.radius));
  }
  InclusionReport report;
  report.label = fmt::format("B_{}(x,{:.6g}) in B_{}(x,{:.6g})", to_string(inner.metric), inner.radius,
                             to_string(outer.metric), outer.radius);
  report.inner = inner;
  report.outer = outer;

  if (inner.metric == MetricKind::Euclidean && inner.radius == 0.0) {
    report.min_margin = outer.radius - evaluate(outer.metric, domain, x, x);
    report.sharpness_gap = report.min_margin;
    report.worst_point = x;
    report.holds = report.min_margin >= -options.tol;
    report.samples = 1;
    report.notes.push_back("empty inner ball, checked at the center only");
    return report;
  }

  const auto [u, v] = section_for(domain, x);
  std::vector<Point> points;
  if (inner.metric == MetricKind::Euclidean) {
    if (!(inner.radius > 0.0)) throw RangeError("inner radius must be positive");
    points.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
      points.push_back(x + inner.radius * (u * std::cos(theta) + v * std::sin(theta)));
    }
  } else if (const auto c = single_puncture(domain); c && polar_metric(inner.metric) && !(x == *c)) {
    if (!(inner.radius > 0.0) || inner.radius > metric_upper_bound(inner.metric)) {
      throw RangeError(fmt::format("inner radius {} is out of range", inner.radius));
    }
    points = polar_boundary(domain, inner.metric, *c, x, inner.radius, samples, u, v);
  } else {
    TraceOptions trace_options;
    trace_options.plane = std::pair{u, v};
    trace_options.all_crossings = inner.metric != MetricKind::S;
    trace_options.scan_samples = options.scan_samples;
    BallTrace trace = trace_ball(domain, inner.metric, x, inner.radius, samples, trace_options);
    if (!trace.truncated_rays.empty()) {
      report.notes.push_back(fmt::format("{} rays reach the escape bound; sampled there", trace.truncated_rays.size()));
    }
    points = std::move(trace.polyline);
    points.insert(points.end(), trace.extra_crossings.begin(), trace.extra_crossings.end());
  }

  Tally tally;
  const double eps = kContactScale * dx;
  for (const Point& p : points) {
    if (!domain.contains(p) || boundary_distance(domain, p) <= eps) {
      tally.contact = true;
      continue;
    }
    const double margin = outer.radius - evaluate(outer.metric, domain, x, p);
    ++tally.count;
    if (margin < tally.min_margin) {
      tally.min_margin = margin;
      tally.worst = p;
    }
  }
  report.samples = tally.count;
  report.boundary_contact = tally.contact;
  if (tally.count == 0) {
    report.min_margin = outer.radius;
    report.worst_point = x;
    report.notes.push_back("every inner-boundary sample touches the boundary of G");
  } else {
    report.min_margin = tally.min_margin;
    report.worst_point = tally.worst;
  }
  report.sharpness_gap = report.min_margin;
  if (tally.contact) {
    report.sharpness_gap = std::min(report.sharpness_gap, 0.0);
    report.notes.push_back(
        fmt::format("inner boundary touches dG; samples within {:.3g} of it are excluded", eps));
  }
  report.holds = report.min_margin >= -options.tol;

  if (const auto c = single_puncture(domain); c && outer.metric == MetricKind::V && tally.count > 0) {
    const auto predicted = predicted_extremal(inner.metric, x, *c, outer.radius, v);
    if (!predicted.empty() && !(report.worst_point == x)) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& q : predicted) best = std::min(best, angle_at(report.worst_point, x, q));
      report.locus_error = best;
    }
  }
  return report;
}

HalfspaceSuite halfspace_inclusion_suite(const Point& x, double r, std::size_t samples, double tol) {
  require_finite(x);
  if (!(x.last() > 0.0)) throw DomainError("x must lie in the upper half-space");
  const VBallSandwich balls = vball_sandwich(x, r);
  const VBallCurve curve = vball_curve(r, samples);
  const double h = x.last();
  const std::size_t n = x.dim();
  const Point e1 = Point::basis(n, 0);
  const Point en = Point::basis(n, n - 1);

  HalfspaceSuite suite;
  auto inner_check = [&](const char* label, const EuclideanBall& ball, bool claimed) {
    InclusionReport rep;
    rep.label = label;
    rep.inner = {MetricKind::Euclidean, ball.radius / h};
    rep.outer = {MetricKind::V, r};
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
      const Point p = ball.center + ball.radius * (e1 * std::cos(theta) + en * std::sin(theta));
      const double margin = r - v_halfspace(x, p);
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.worst_point = p;
      }
    }
    rep.samples = samples;
    rep.sharpness_gap = rep.min_margin;
    rep.holds = rep.min_margin >= -tol;
    if (!claimed) rep.notes.push_back("sharpness not claimed; gap is informational");
    suite.reports.push_back(std::move(rep));
  };
  auto outer_check = [&](const char* label, const EuclideanBall& ball, bool claimed) {
    InclusionReport rep;
    rep.label = label;
    rep.inner = {MetricKind::V, r};
    rep.outer = {MetricKind::Euclidean, ball.radius / h};
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (const Point& q : curve.polyline) {
      const Point p = from_normalized(x, q);
      const double margin = (ball.radius - distance(p, ball.center)) / h;
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.worst_point = p;
      }
    }
    rep.samples = curve.polyline.size();
    rep.sharpness_gap = rep.min_margin;
    rep.holds = rep.min_margin >= -tol;
    if (!claimed) rep.notes.push_back("sharpness not claimed; gap is informational");
    suite.reports.push_back(std::move(rep));
  };
  inner_check("inner1", balls.inner1, true);
  inner_check("inner2", balls.inner2, false);
  outer_check("outer1", balls.outer1, true);
  outer_check("outer2", balls.outer2, false);

  const auto offset = [&](double y2) {
    return (distance(from_normalized(x, Point{0.0, y2}), balls.outer1.center) - balls.outer1.radius) / h;
  };
  suite.endpoint_offset_b1 = offset(curve.b1);
  suite.endpoint_offset_b2 = offset(curve.b2);
  return suite;
}

namespace {

struct Box {
  Point lo;
  Point hi;
};

Box sampling_box(const Domain& domain) {
  const std::size_t n = domain.dim();
  Point lo = Point::zero(n);
  Point hi = Point::zero(n);
  if (const auto* g = domain.get_if<PuncturedSpace>()) {
    lo = hi = g->obstacles.front();
    for (const Point& p : g->obstacles) {
      for (std::size_t k = 0; k < n; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
    double pad = 1.0;
    for (std::size_t k = 0; k < n; ++k) pad = std::max(pad, hi[k] - lo[k]);
    for (std::size_t k = 0; k < n; ++k) {
      lo[k] -= 2.0 * pad;
      hi[k] += 2.0 * pad;
    }
  } else if (domain.get_if<HalfSpace>()) {
    for (std::size_t k = 0; k < n; ++k) {
      lo[k] = -2.0;
      hi[k] = 2.0;
    }
    lo[n - 1] = 0.0;
  } else if (domain.get_if<UnitBall>()) {
    for (std::size_t k = 0; k < n; ++k) {
      lo[k] = -1.0;
      hi[k] = 1.0;
    }
  } else {
    const auto& v = std::get<Polygon>(domain.variant()).vertices;
    lo = hi = v.front();
    for (const Point& p : v) {
      for (std::size_t k = 0; k < 2; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
  }
  return {lo, hi};
}

}  // namespace

std::optional<TriangleViolation> p_triangle_experiment(const Domain& domain, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw RangeError("p_triangle_experiment needs at least one trial");
  const Box box = sampling_box(domain);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = domain.dim();
  auto draw = [&] {
    for (;;) {
      Point p = Point::zero(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * unit(rng);
      if (domain.contains(p)) return p;
    }
  };
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Point a = draw();
    const Point b = draw();
    const Point c = draw();
    const double pab = p_function(domain, a, b);
    const double pbc = p_function(domain, b, c);
    const double pac = p_function(domain, a, c);
    // Each point in turn plays the middle vertex.
    const double slack = 1e-12;
    if (pac > pab + pbc + slack) return TriangleViolation{a, b, c, pac - pab - pbc, trial};
    if (pbc > pab + pac + slack) return TriangleViolation{b, a, c, pbc - pab - pac, trial};
    if (pab > pac + pbc + slack) return TriangleViolation{a, c, b, pab - pac - pbc, trial};
  }
  return std::nullopt;
}

}  // namespace hypmetrics
