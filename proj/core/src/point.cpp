#include "hypmetrics/point.hpp"

#include <cmath>

#include <fmt/format.h>

#include "hypmetrics/errors.hpp"

namespace hypmetrics {

namespace {

void validate(const Point::Storage& coords) {
  if (coords.size() < 2) {
    throw DimensionError(fmt::format("points need dimension n >= 2, got {}", coords.size()));
  }
  for (double c : coords) {
    if (!std::isfinite(c)) throw DomainError("point has a non-finite coordinate");
  }
}

}  // namespace

Point::Point(std::initializer_list<double> coords) : coords_(coords.begin(), coords.end()) {
  validate(coords_);
}

Point::Point(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {
  validate(coords_);
}

Point Point::zero(std::size_t dim) {
  if (dim < 2) throw DimensionError(fmt::format("points need dimension n >= 2, got {}", dim));
  return Point(Unchecked{}, dim);
}

Point Point::basis(std::size_t dim, std::size_t axis) {
  Point p = zero(dim);
  if (axis >= dim) throw DimensionError(fmt::format("axis {} out of range for R^{}", axis, dim));
  p.coords_[axis] = 1.0;
  return p;
}

Point& Point::operator+=(const Point& other) noexcept {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& other) noexcept {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Point& Point::operator*=(double factor) noexcept {
  for (double& c : coords_) c *= factor;
  return *this;
}

Point& Point::operator/=(double divisor) noexcept {
  for (double& c : coords_) c /= divisor;
  return *this;
}

double dot(const Point& a, const Point& b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm_squared(const Point& a) noexcept { return dot(a, a); }

double norm(const Point& a) noexcept { return std::sqrt(norm_squared(a)); }

double distance(const Point& a, const Point& b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

Point along(const Point& origin, const Point& direction, double t) {
  Point p = origin;
  for (std::size_t i = 0; i < p.dim(); ++i) p[i] += t * direction[i];
  return p;
}

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError(fmt::format("dimension mismatch: {} vs {}", a.dim(), b.dim()));
  }
}

void require_finite(const Point& p) {
  for (double c : p.coords()) {
    if (!std::isfinite(c)) throw DomainError("point has a non-finite coordinate");
  }
}

std::string to_string(const Point& p) {
  return fmt::format("({})", fmt::join(p.coords(), ", "));
}

}  // namespace hypmetrics
