#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypmetrics/point.hpp"

namespace hypmetrics {

inline constexpr double kDefaultTolerance = 1e-9;

/// G = R^n minus a finite, nonempty set of obstacles.
struct PuncturedSpace {
  std::vector<Point> obstacles;
};

/// G = { x : x_n > 0 }.
struct HalfSpace {
  std::size_t dim = 2;
};

/// G = { x : |x| < 1 }.
struct UnitBall {
  std::size_t dim = 2;
};

/// Interior of a simple planar polygon, vertices stored counterclockwise.
struct Polygon {
  std::vector<Point> vertices;
};

/// A proper subdomain G of R^n together with access to its boundary.
///
/// Built only through the named factories, which validate the variant's
/// invariants. Immutable afterwards.
class Domain {
 public:
  using Variant = std::variant<PuncturedSpace, HalfSpace, UnitBall, Polygon>;

  static Domain punctured(std::vector<Point> obstacles);
  static Domain half_space(std::size_t dim = 2);
  static Domain unit_ball(std::size_t dim = 2);
  /// Orientation is normalized to counterclockwise.
  static Domain polygon(std::vector<Point> vertices);

  std::size_t dim() const noexcept { return dim_; }
  const Variant& variant() const noexcept { return variant_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&variant_);
  }

  /// Strict interior membership; boundary points are not in G.
  bool contains(const Point& x) const;

 private:
  Domain(Variant v, std::size_t dim) : variant_(std::move(v)), dim_(dim) {}

  Variant variant_;
  std::size_t dim_;
};

std::string describe(const Domain& domain);

/// Box [lo, hi] applied to every coordinate of an unbounded boundary
/// (the first n-1 coordinates of the half-space boundary).
struct Window {
  double lo = -10.0;
  double hi = 10.0;
};

/// d(x, dG) for x in G. Throws DomainError when x is outside G or on dG.
double dist_to_boundary(const Domain& domain, const Point& x);

/// Unsigned distance from any point of R^n to dG, no membership check.
double boundary_distance(const Domain& domain, const Point& x);

/// The angle x-z-y in [0, pi]. Throws DegenerateAngle when z equals x or y.
double angle_at(const Point& x, const Point& z, const Point& y);

/// At least `budget` boundary points. Finite boundaries are returned exactly;
/// the half-space boundary is discretized inside `window` and then extended
/// by geometric tail points on each side.
std::vector<Point> boundary_sample(const Domain& domain, std::size_t budget,
                                   std::optional<Window> window = std::nullopt);

/// Number of tail points added on each side of the half-space window.
inline constexpr std::size_t kHalfSpaceTailPoints = 16;

}  // namespace hypmetrics
