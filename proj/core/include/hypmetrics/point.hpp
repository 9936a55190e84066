#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

#include <boost/container/small_vector.hpp>

namespace hypmetrics {

/// A point of R^n, n >= 2, with finite coordinates.
///
/// Storage is inline for n <= 4 so the hot loops of ray tracing and boundary
/// searches never allocate. The validating constructors enforce the
/// invariants; arithmetic assumes both operands share a dimension.
class Point {
 public:
  using Storage = boost::container::small_vector<double, 4>;

  /// Empty placeholder (dimension 0). Not a valid point of any domain.
  Point() = default;
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);

  static Point zero(std::size_t dim);
  /// Unit vector e_{axis+1} of R^dim.
  static Point basis(std::size_t dim, std::size_t axis);

  std::size_t dim() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  double& operator[](std::size_t i) noexcept { return coords_[i]; }
  /// The last coordinate x_n (height in the upper half-space).
  double last() const noexcept { return coords_.back(); }
  std::span<const double> coords() const noexcept { return {coords_.data(), coords_.size()}; }

  Point& operator+=(const Point& other) noexcept;
  Point& operator-=(const Point& other) noexcept;
  Point& operator*=(double factor) noexcept;
  Point& operator/=(double divisor) noexcept;

  friend Point operator+(Point a, const Point& b) noexcept { return a += b; }
  friend Point operator-(Point a, const Point& b) noexcept { return a -= b; }
  friend Point operator*(Point a, double f) noexcept { return a *= f; }
  friend Point operator*(double f, Point a) noexcept { return a *= f; }
  friend Point operator/(Point a, double d) noexcept { return a /= d; }
  friend Point operator-(Point a) noexcept { return a *= -1.0; }

  friend bool operator==(const Point& a, const Point& b) noexcept { return a.coords_ == b.coords_; }

 private:
  struct Unchecked {};
  Point(Unchecked, std::size_t dim) : coords_(dim, 0.0) {}

  Storage coords_;
};

double dot(const Point& a, const Point& b) noexcept;
double norm_squared(const Point& a) noexcept;
double norm(const Point& a) noexcept;
double distance(const Point& a, const Point& b) noexcept;

/// origin + t * direction, computed in a single pass.
Point along(const Point& origin, const Point& direction, double t);

/// Throws DimensionError unless a and b have the same dimension.
void require_same_dim(const Point& a, const Point& b);

/// Throws DomainError when a coordinate is not finite.
void require_finite(const Point& p);

std::string to_string(const Point& p);

}  // namespace hypmetrics
