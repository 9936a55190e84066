#include "hypmetrics/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "hypmetrics/errors.hpp"

namespace hypmetrics {

namespace {

double cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

int orientation(const Point& o, const Point& a, const Point& b) {
  const double c = cross2(o, a, b);
  return (c > 0.0) - (c < 0.0);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const double ex = b[0] - a[0];
  const double ey = b[1] - a[1];
  const double len2 = ex * ex + ey * ey;
  double u = ((p[0] - a[0]) * ex + (p[1] - a[1]) * ey) / len2;
  u = std::clamp(u, 0.0, 1.0);
  return std::hypot(p[0] - (a[0] + u * ex), p[1] - (a[1] + u * ey));
}

bool polygon_winds_around(const Polygon& poly, const Point& p) {
  bool inside = false;
  const auto& v = poly.vertices;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i][1] > p[1]) != (v[j][1] > p[1])) {
      const double x_cross = v[j][0] + (p[1] - v[j][1]) * (v[i][0] - v[j][0]) / (v[i][1] - v[j][1]);
      if (p[0] < x_cross) inside = !inside;
    }
  }
  return inside;
}

double polygon_boundary_distance(const Polygon& poly, const Point& p) {
  double best = std::numeric_limits<double>::infinity();
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, segment_distance(p, v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

void require_dim(const Domain& domain, const Point& x) {
  if (x.dim() != domain.dim()) {
    throw DimensionError(fmt::format("point of dimension {} used with a domain in R^{}", x.dim(), domain.dim()));
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Domain Domain::punctured(std::vector<Point> obstacles) {
  if (obstacles.empty()) throw DomainError("punctured space needs at least one obstacle");
  const std::size_t dim = obstacles.front().dim();
  for (const Point& p : obstacles) {
    if (p.dim() < 2) throw DimensionError("obstacles need dimension n >= 2");
    require_same_dim(p, obstacles.front());
    require_finite(p);
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    for (std::size_t j = i + 1; j < obstacles.size(); ++j) {
      if (obstacles[i] == obstacles[j]) {
        throw DomainError(fmt::format("duplicate obstacle {}", to_string(obstacles[i])));
      }
    }
  }
  return Domain(PuncturedSpace{std::move(obstacles)}, dim);
}

Domain Domain::half_space(std::size_t dim) {
  if (dim < 2) throw DimensionError("half-space needs n >= 2");
  return Domain(HalfSpace{dim}, dim);
}

Domain Domain::unit_ball(std::size_t dim) {
  if (dim < 2) throw DimensionError("unit ball needs n >= 2");
  return Domain(UnitBall{dim}, dim);
}

Domain Domain::polygon(std::vector<Point> vertices) {
  if (vertices.size() < 3) throw DomainError("polygon needs at least 3 vertices");
  for (const Point& p : vertices) {
    if (p.dim() != 2) throw DimensionError("polygon vertices must be 2D");
    require_finite(p);
  }
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (vertices[i] == vertices[j]) throw DomainError("polygon has repeated vertices");
    }
  }
  // Non-adjacent edges must not meet; adjacent edges may only share their vertex.
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point& c = vertices[j];
      const Point& d = vertices[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        const Point& shared = (j == i + 1) ? b : a;
        const Point& p = (j == i + 1) ? a : b;
        const Point& q = (j == i + 1) ? d : c;
        if (orientation(shared, p, q) == 0 && dot(p - shared, q - shared) > 0.0) {
          throw DomainError("polygon has overlapping adjacent edges");
        }
        continue;
      }
      if (segments_intersect(a, b, c, d)) throw DomainError("polygon is not simple");
    }
  }
  double twice_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    twice_area += a[0] * b[1] - b[0] * a[1];
  }
  if (twice_area == 0.0) throw DomainError("polygon has zero area");
  if (twice_area < 0.0) std::reverse(vertices.begin(), vertices.end());
  return Domain(Polygon{std::move(vertices)}, 2);
}

bool Domain::contains(const Point& x) const {
  if (x.dim() != dim_) return false;
  for (double c : x.coords()) {
    if (!std::isfinite(c)) return false;
  }
  return std::visit(
      Overloaded{
          [&](const PuncturedSpace& g) {
            return std::none_of(g.obstacles.begin(), g.obstacles.end(), [&](const Point& z) { return z == x; });
          },
          [&](const HalfSpace&) { return x.last() > 0.0; },
          [&](const UnitBall&) { return norm_squared(x) < 1.0; },
          [&](const Polygon& g) { return polygon_winds_around(g, x) && polygon_boundary_distance(g, x) > 0.0; },
      },
      variant_);
}

std::string describe(const Domain& domain) {
  return std::visit(
      Overloaded{
          [](const PuncturedSpace& g) {
            std::string out = fmt::format("R^{} minus {{", g.obstacles.front().dim());
            for (std::size_t i = 0; i < g.obstacles.size(); ++i) {
              out += (i ? ", " : "") + to_string(g.obstacles[i]);
            }
            return out + "}";
          },
          [](const HalfSpace& g) { return fmt::format("upper half-space H^{}", g.dim); },
          [](const UnitBall& g) { return fmt::format("unit ball B^{}", g.dim); },
          [](const Polygon& g) { return fmt::format("polygon with {} vertices", g.vertices.size()); },
      },
      domain.variant());
}

double boundary_distance(const Domain& domain, const Point& x) {
  require_dim(domain, x);
  return std::visit(
      Overloaded{
          [&](const PuncturedSpace& g) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& z : g.obstacles) best = std::min(best, distance(x, z));
            return best;
          },
          [&](const HalfSpace&) { return std::abs(x.last()); },
          [&](const UnitBall&) { return std::abs(1.0 - norm(x)); },
          [&](const Polygon& g) { return polygon_boundary_distance(g, x); },
      },
      domain.variant());
}

double dist_to_boundary(const Domain& domain, const Point& x) {
  require_dim(domain, x);
  if (!domain.contains(x)) {
    throw DomainError(fmt::format("{} is not an interior point of {}", to_string(x), describe(domain)));
  }
  return boundary_distance(domain, x);
}

double angle_at(const Point& x, const Point& z, const Point& y) {
  require_same_dim(x, z);
  require_same_dim(y, z);
  if (z == x || z == y) throw DegenerateAngle("angle vertex coincides with an endpoint");
  // Kahan's form 2*atan2(| |b|a - |a|b |, | |b|a + |a|b |) stays accurate near
  // 0 and pi; swapping a and b negates the first vector, so the value is
  // bitwise symmetric in x and y.
  const Point a = x - z;
  const Point b = y - z;
  const double na = norm(a);
  const double nb = norm(b);
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double u = nb * a[i];
    const double v = na * b[i];
    diff += (u - v) * (u - v);
    sum += (u + v) * (u + v);
  }
  const double angle = 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
  return std::clamp(angle, 0.0, std::numbers::pi);
}

std::vector<Point> boundary_sample(const Domain& domain, std::size_t budget, std::optional<Window> window) {
  if (budget < 2) throw RangeError("boundary_sample needs budget >= 2");
  return std::visit(
      Overloaded{
          [&](const PuncturedSpace& g) { return g.obstacles; },
          [&](const HalfSpace& g) {
            if (!window) throw MissingWindow("half-space boundary is unbounded; a window is required");
            if (!(window->hi > window->lo)) throw RangeError("window needs lo < hi");
            const std::size_t free_dims = g.dim - 1;
            const auto per_axis = static_cast<std::size_t>(
                std::ceil(std::pow(static_cast<double>(budget), 1.0 / static_cast<double>(free_dims)) - 1e-9));
            const std::size_t m = std::max<std::size_t>(per_axis, 2);
            std::vector<Point> out;
            std::size_t total = 1;
            for (std::size_t k = 0; k < free_dims; ++k) total *= m;
            if (free_dims == 1) total = budget;
            const std::size_t axis_count = free_dims == 1 ? budget : m;
            out.reserve(total + 2 * kHalfSpaceTailPoints * free_dims);
            std::vector<std::size_t> idx(free_dims, 0);
            for (std::size_t n = 0; n < total; ++n) {
              Point p = Point::zero(g.dim);
              for (std::size_t k = 0; k < free_dims; ++k) {
                p[k] = window->lo + (window->hi - window->lo) * static_cast<double>(idx[k]) /
                                        static_cast<double>(axis_count - 1);
              }
              out.push_back(std::move(p));
              for (std::size_t k = 0; k < free_dims; ++k) {
                if (++idx[k] < axis_count) break;
                idx[k] = 0;
              }
            }
            const double center = 0.5 * (window->lo + window->hi);
            const double half = 0.5 * (window->hi - window->lo);
            for (std::size_t k = 0; k < free_dims; ++k) {
              for (std::size_t j = 1; j <= kHalfSpaceTailPoints; ++j) {
                const double offset = half * std::ldexp(1.0, static_cast<int>(j));
                for (double sign : {-1.0, 1.0}) {
                  Point p = Point::zero(g.dim);
                  for (std::size_t a = 0; a < free_dims; ++a) p[a] = center;
                  p[k] = center + sign * offset;
                  out.push_back(std::move(p));
                }
              }
            }
            return out;
          },
          [&](const UnitBall& g) {
            std::vector<Point> out;
            out.reserve(budget);
            if (g.dim == 2) {
              for (std::size_t k = 0; k < budget; ++k) {
                const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(budget);
                out.push_back(Point{std::cos(t), std::sin(t)});
              }
              return out;
            }
            std::mt19937_64 rng(0x5eed);
            std::normal_distribution<double> gauss;
            while (out.size() < budget) {
              Point p = Point::zero(g.dim);
              for (std::size_t i = 0; i < g.dim; ++i) p[i] = gauss(rng);
              const double len = norm(p);
              if (len < 1e-12) continue;
              out.push_back(p / len);
            }
            return out;
          },
          [&](const Polygon& g) {
            const auto& v = g.vertices;
            double perimeter = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) perimeter += distance(v[i], v[(i + 1) % v.size()]);
            std::vector<Point> out;
            for (std::size_t i = 0; i < v.size(); ++i) {
              const Point& a = v[i];
              const Point& b = v[(i + 1) % v.size()];
              const auto share = static_cast<std::size_t>(
                  std::ceil(static_cast<double>(budget) * distance(a, b) / perimeter));
              const std::size_t k = std::max<std::size_t>(share, 1);
              for (std::size_t j = 0; j < k; ++j) {
                out.push_back(along(a, b - a, static_cast<double>(j) / static_cast<double>(k)));
              }
            }
            return out;
          },
      },
      domain.variant());
}

}  // namespace hypmetrics
