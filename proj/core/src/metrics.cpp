#include "hypmetrics/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "hypmetrics/errors.hpp"
#include "hypmetrics/halfspace.hpp"
#include "hypmetrics/sup_oracle.hpp"

namespace hypmetrics {

namespace {

constexpr double kOracleTol = 1e-13;

void require_inside(const Domain& domain, const Point& p) {
  if (!domain.contains(p)) {
    throw DomainError(fmt::format("{} is not in {}", to_string(p), describe(domain)));
  }
}

void require_pair(const Domain& domain, const Point& x, const Point& y) {
  require_inside(domain, x);
  require_inside(domain, y);
}

// Oracle-based evaluators see the pair in lexicographic order so that
// m(x, y) and m(y, x) run the exact same floating-point computation.
std::pair<const Point*, const Point*> canonical(const Point& x, const Point& y) {
  const auto a = x.coords();
  const auto b = y.coords();
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) return {&y, &x};
  return {&x, &y};
}

Point unit_orthogonal_to(const Point& e1) {
  const std::size_t n = e1.dim();
  for (std::size_t axis = 0; axis < n; ++axis) {
    Point v = Point::basis(n, axis);
    v -= e1 * dot(v, e1);
    const double len = norm(v);
    if (len > 0.5) return v / len;
  }
  Point v = Point::basis(n, n - 1);
  v -= e1 * dot(v, e1);
  return v / norm(v);
}

// Coordinates of x and y in a plane through the origin containing both. The
// unit ball is invariant under rotations fixing that plane, so its boundary
// extremals for s and v lie on the great circle in the plane.
std::pair<Point, Point> to_plane(const Point& x, const Point& y) {
  if (x.dim() == 2) return {x, y};
  const Point& lead = norm(x) > 0.0 ? x : y;
  const Point e1 = lead / norm(lead);
  Point rest = y - e1 * dot(y, e1);
  const double rest_len = norm(rest);
  const Point e2 = rest_len > 1e-14 * std::max(1.0, norm(y)) ? rest / rest_len : unit_orthogonal_to(e1);
  return {Point{dot(x, e1), dot(x, e2)}, Point{dot(y, e1), dot(y, e2)}};
}

double heron_sum(const Point& x, const Point& y, const Point& a, const Point& b) {
  // Minimizes |x-z| + |z-y| for z on the segment [a, b]. The sum is convex in
  // the segment parameter, so clamping the minimizer on the full line is exact.
  const Point e = b - a;
  const double len2 = norm_squared(e);
  const Point normal{-e[1], e[0]};
  const double sx = dot(x - a, normal);
  double sy = dot(y - a, normal);
  Point target = y;
  if ((sx > 0.0) == (sy > 0.0) && sx != 0.0 && sy != 0.0) {
    target = y - normal * (2.0 * sy / len2);
    sy = -sy;
  }
  double u;
  if (sx == sy) {
    u = dot(x - a, e) / len2;
  } else {
    const double w = sx / (sx - sy);
    const Point crossing = along(x, target - x, w);
    u = dot(crossing - a, e) / len2;
  }
  u = std::clamp(u, 0.0, 1.0);
  const Point z = along(a, e, u);
  return distance(x, z) + distance(z, y);
}

SupOptions oracle_options(const Point& x, const Point& y) {
  SupOptions options;
  options.tol = kOracleTol;
  options.focus = {x, y};
  return options;
}

double ratio_at(const Point& x, const Point& y, double dxy, const Point& z) {
  return dxy / (distance(x, z) + distance(z, y));
}

}  // namespace

std::string_view to_string(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::S: return "s";
    case MetricKind::J: return "j";
    case MetricKind::K: return "k";
    case MetricKind::P: return "p";
    case MetricKind::Q: return "q";
    case MetricKind::V: return "v";
    case MetricKind::Euclidean: return "euclidean";
  }
  return "?";
}

std::optional<MetricKind> parse_metric_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "s") return MetricKind::S;
  if (lower == "j") return MetricKind::J;
  if (lower == "k") return MetricKind::K;
  if (lower == "p") return MetricKind::P;
  if (lower == "q") return MetricKind::Q;
  if (lower == "v") return MetricKind::V;
  if (lower == "euclidean" || lower == "e") return MetricKind::Euclidean;
  return std::nullopt;
}

double metric_upper_bound(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::S:
    case MetricKind::P:
    case MetricKind::Q: return 1.0;
    case MetricKind::V: return std::numbers::pi;
    default: return std::numeric_limits<double>::infinity();
  }
}

double s_metric(const Domain& domain, const Point& x0, const Point& y0) {
  require_pair(domain, x0, y0);
  if (x0 == y0) return 0.0;
  const auto [xp, yp] = canonical(x0, y0);
  const Point& x = *xp;
  const Point& y = *yp;
  const double dxy = distance(x, y);

  if (const auto* g = domain.get_if<PuncturedSpace>()) {
    double best = 0.0;
    for (const Point& z : g->obstacles) best = std::max(best, ratio_at(x, y, dxy, z));
    return std::min(best, 1.0);
  }
  if (domain.get_if<HalfSpace>()) {
    Point mirror = y;
    mirror[y.dim() - 1] = -y.last();
    return dxy / distance(x, mirror);
  }
  if (domain.get_if<UnitBall>()) {
    const auto [px, py] = to_plane(x, y);
    const Domain disk = Domain::unit_ball(2);
    const double d = distance(px, py);
    const auto result = sup_oracle(disk, [&](const Point& z) { return ratio_at(px, py, d, z); },
                                   oracle_options(px, py));
    return std::min(result.value, 1.0);
  }
  const auto& v = std::get<Polygon>(domain.variant()).vertices;
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::max(best, dxy / heron_sum(x, y, v[i], v[(i + 1) % v.size()]));
  }
  return std::min(best, 1.0);
}

double j_metric(const Domain& domain, const Point& x, const Point& y) {
  require_pair(domain, x, y);
  const double d = std::min(dist_to_boundary(domain, x), dist_to_boundary(domain, y));
  return std::log1p(distance(x, y) / d);
}

QuasihyperbolicValue k_punctured_detailed(const Point& x, const Point& y) {
  require_same_dim(x, y);
  const double nx = norm(x);
  const double ny = norm(y);
  if (nx == 0.0 || ny == 0.0) throw DomainError("k is undefined at the puncture");
  if (x == y) return {0.0, false};
  const double phi = angle_at(x, Point::zero(x.dim()), y);
  const double ratio = std::log(nx) - std::log(ny);
  return {std::hypot(phi, ratio), std::abs(phi - std::numbers::pi) <= kDefaultTolerance};
}

double k_punctured(const Point& x, const Point& y) { return k_punctured_detailed(x, y).value; }

double p_function(const Domain& domain, const Point& x, const Point& y) {
  require_pair(domain, x, y);
  const double d = distance(x, y);
  const double dd = dist_to_boundary(domain, x) * dist_to_boundary(domain, y);
  return d / std::sqrt(d * d + 4.0 * dd);
}

double q_chordal(const ExtendedPoint& x, const ExtendedPoint& y) {
  const auto* px = std::get_if<Point>(&x);
  const auto* py = std::get_if<Point>(&y);
  if (px == nullptr && py == nullptr) return 0.0;
  if (px == nullptr) return 1.0 / std::sqrt(1.0 + norm_squared(*py));
  if (py == nullptr) return 1.0 / std::sqrt(1.0 + norm_squared(*px));
  require_same_dim(*px, *py);
  return distance(*px, *py) / (std::sqrt(1.0 + norm_squared(*px)) * std::sqrt(1.0 + norm_squared(*py)));
}

double v_metric(const Domain& domain, const Point& x0, const Point& y0) {
  require_pair(domain, x0, y0);
  if (x0 == y0) return 0.0;
  const auto [xp, yp] = canonical(x0, y0);
  const Point& x = *xp;
  const Point& y = *yp;

  if (const auto* g = domain.get_if<PuncturedSpace>()) {
    double best = 0.0;
    for (const Point& z : g->obstacles) best = std::max(best, angle_at(x, z, y));
    return best;
  }
  if (domain.get_if<HalfSpace>()) return v_halfspace(x, y);
  if (domain.get_if<UnitBall>()) {
    const auto [px, py] = to_plane(x, y);
    const Domain disk = Domain::unit_ball(2);
    return sup_oracle(disk, [&](const Point& z) { return angle_at(px, z, py); }, oracle_options(px, py)).value;
  }
  return sup_oracle(domain, [&](const Point& z) { return angle_at(x, z, y); }, oracle_options(x, y)).value;
}

double evaluate(MetricKind kind, const Domain& domain, const Point& x, const Point& y) {
  switch (kind) {
    case MetricKind::S: return s_metric(domain, x, y);
    case MetricKind::J: return j_metric(domain, x, y);
    case MetricKind::P: return p_function(domain, x, y);
    case MetricKind::V: return v_metric(domain, x, y);
    case MetricKind::Q:
      require_pair(domain, x, y);
      return q_chordal(x, y);
    case MetricKind::Euclidean:
      require_pair(domain, x, y);
      return distance(x, y);
    case MetricKind::K: {
      const auto* g = domain.get_if<PuncturedSpace>();
      if (g == nullptr || g->obstacles.size() != 1) {
        throw UnsupportedMetric("k is implemented only on R^n minus a single point");
      }
      require_pair(domain, x, y);
      const Point& c = g->obstacles.front();
      return k_punctured(x - c, y - c);
    }
  }
  throw UnsupportedMetric("unknown metric kind");
}

}  // namespace hypmetrics
