#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "hypmetrics/geom.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

enum class MetricKind { S, J, K, P, Q, V, Euclidean };

std::string_view to_string(MetricKind kind) noexcept;
/// Accepts "s", "j", "k", "p", "q", "v", "euclidean" (or "e"), case-insensitive.
std::optional<MetricKind> parse_metric_kind(std::string_view name);

/// Supremum of the metric's values; ball radii must lie in (0, bound].
double metric_upper_bound(MetricKind kind) noexcept;

/// Triangular ratio metric, in [0, 1].
double s_metric(const Domain& domain, const Point& x, const Point& y);

/// Distance ratio metric log(1 + |x-y| / min(d(x), d(y))).
double j_metric(const Domain& domain, const Point& x, const Point& y);

struct QuasihyperbolicValue {
  double value = 0.0;
  // x and y lie on opposite rays through the puncture (phi = pi), where the
  // closed form is used outside the range it is stated for.
  bool antipodal = false;
};

/// Quasihyperbolic distance in R^n minus {0}: sqrt(phi^2 + log^2(|x|/|y|)).
QuasihyperbolicValue k_punctured_detailed(const Point& x, const Point& y);
double k_punctured(const Point& x, const Point& y);

/// Point pair function |x-y| / sqrt(|x-y|^2 + 4 d(x) d(y)), in [0, 1).
double p_function(const Domain& domain, const Point& x, const Point& y);

/// The point at infinity of the one-point compactification.
struct Infinity {};
inline constexpr Infinity infinity{};
using ExtendedPoint = std::variant<Point, Infinity>;

/// Chordal metric on R^n plus infinity, in [0, 1].
double q_chordal(const ExtendedPoint& x, const ExtendedPoint& y);

/// Visual angle metric sup{ angle(x, z, y) : z in dG }, in [0, pi].
double v_metric(const Domain& domain, const Point& x, const Point& y);

/// Dispatches on `kind`. Both points must lie in G for every kind; K needs a
/// punctured space with exactly one obstacle (UnsupportedMetric otherwise).
double evaluate(MetricKind kind, const Domain& domain, const Point& x, const Point& y);

}  // namespace hypmetrics
