#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "hypmetrics/geom.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

/// Best boundary value found by sup_oracle. `value` is attained at
/// `argpoint`, so it is a lower bound on the true supremum; `residual` is the
/// improvement made by the last refinement round.
struct SupResult {
  double value = 0.0;
  Point argpoint;
  int refinements = 0;
  double residual = 0.0;
};

struct SupOptions {
  double tol = 1e-10;
  /// Required when the boundary is unbounded (half-space).
  std::optional<Window> window;
  /// Coarse samples shared among the boundary pieces.
  std::size_t coarse_budget = 512;
  /// Interior points whose boundary projections get geometrically clustered
  /// coarse samples. Narrow peaks of angle-type objectives sit near them.
  std::vector<Point> focus;
  /// Local maxima of the coarse sample that are refined.
  std::size_t candidates = 4;
  int max_rounds = 8;
};

using BoundaryObjective = std::function<double(const Point&)>;

/// Maximizes `objective` over dG: exhaustive on finite boundaries; otherwise a
/// coarse sample of every boundary piece followed by golden-section refinement
/// of the best brackets, repeated until a round improves the value by less
/// than `tol`.
SupResult sup_oracle(const Domain& domain, const BoundaryObjective& objective, const SupOptions& options);

SupResult sup_oracle(const Domain& domain, const BoundaryObjective& objective, double tol,
                     std::optional<Window> window = std::nullopt);

}  // namespace hypmetrics
