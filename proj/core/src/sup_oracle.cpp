#include "hypmetrics/sup_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypmetrics/errors.hpp"

namespace hypmetrics {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // 1/phi
constexpr int kFocusLevels = 48;

// A boundary piece parameterized by a box of dimension `dims`.
struct Piece {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<bool> periodic;
  std::function<Point(std::span<const double>)> map;
  std::function<std::vector<double>(const Point&)> project;

  std::size_t dims() const { return lo.size(); }
};

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  Point point;

  bool offer(double v, const Point& p) {
    if (v > value) {
      value = v;
      point = p;
      return true;
    }
    return false;
  }
};

double safe_eval(const BoundaryObjective& f, const Point& p) {
  const double v = f(p);
  return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
}

// Golden-section maximization of g on [a, b]; returns (argmax, max) over all
// evaluated points.
std::pair<double, double> golden_max(const std::function<double(double)>& g, double a, double b,
                                     double best_u, double best_v) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c);
  double gd = g(d);
  auto track = [&](double u, double v) {
    if (v > best_v) {
      best_v = v;
      best_u = u;
    }
  };
  track(c, gc);
  track(d, gd);
  for (int it = 0; it < 200; ++it) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    if (b - a <= 8.0 * std::numeric_limits<double>::epsilon() * scale) break;
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
      track(c, gc);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
      track(d, gd);
    }
  }
  return {best_u, best_v};
}

std::vector<Piece> pieces_of(const Domain& domain, const SupOptions& options, std::vector<Point>& discrete) {
  std::vector<Piece> pieces;
  if (const auto* g = domain.get_if<PuncturedSpace>()) {
    discrete = g->obstacles;
    return pieces;
  }
  if (const auto* g = domain.get_if<HalfSpace>()) {
    if (!options.window) throw MissingWindow("half-space boundary is unbounded; a window is required");
    const Window w = *options.window;
    if (!(w.hi > w.lo)) throw RangeError("window needs lo < hi");
    const std::size_t n = g->dim;
    Piece piece;
    piece.lo.assign(n - 1, w.lo);
    piece.hi.assign(n - 1, w.hi);
    piece.periodic.assign(n - 1, false);
    piece.map = [n](std::span<const double> u) {
      Point p = Point::zero(n);
      for (std::size_t k = 0; k + 1 < n; ++k) p[k] = u[k];
      return p;
    };
    piece.project = [n](const Point& f) {
      std::vector<double> u(n - 1);
      for (std::size_t k = 0; k + 1 < n; ++k) u[k] = f[k];
      return u;
    };
    pieces.push_back(std::move(piece));
    const double center = 0.5 * (w.lo + w.hi);
    const double half = 0.5 * (w.hi - w.lo);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      for (std::size_t j = 1; j <= kHalfSpaceTailPoints; ++j) {
        for (double sign : {-1.0, 1.0}) {
          Point p = Point::zero(n);
          for (std::size_t a = 0; a + 1 < n; ++a) p[a] = center;
          p[k] = center + sign * half * std::ldexp(1.0, static_cast<int>(j));
          discrete.push_back(std::move(p));
        }
      }
    }
    return pieces;
  }
  if (const auto* g = domain.get_if<UnitBall>()) {
    const std::size_t n = g->dim;
    Piece piece;
    // Hyperspherical angles: the first n-2 range over [0, pi], the last is periodic.
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const bool last = k + 2 == n;
      piece.lo.push_back(0.0);
      piece.hi.push_back(last ? 2.0 * std::numbers::pi : std::numbers::pi);
      piece.periodic.push_back(last);
    }
    piece.map = [n](std::span<const double> phi) {
      Point p = Point::zero(n);
      double s = 1.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        p[k] = s * std::cos(phi[k]);
        s *= std::sin(phi[k]);
      }
      p[n - 1] = s;
      return p;
    };
    piece.project = [n](const Point& f) {
      std::vector<double> phi(n - 1, 0.0);
      for (std::size_t k = 0; k + 1 < n; ++k) {
        double tail = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) tail += f[j] * f[j];
        tail = std::sqrt(tail);
        if (k + 2 == n) {
          phi[k] = std::atan2(f[n - 1], f[n - 2]);
          if (phi[k] < 0.0) phi[k] += 2.0 * std::numbers::pi;
        } else {
          phi[k] = std::atan2(tail, f[k]);
        }
      }
      return phi;
    };
    pieces.push_back(std::move(piece));
    return pieces;
  }
  const auto& poly = std::get<Polygon>(domain.variant());
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i];
    const Point e = v[(i + 1) % v.size()] - v[i];
    Piece piece;
    piece.lo = {0.0};
    piece.hi = {1.0};
    piece.periodic = {false};
    piece.map = [a, e](std::span<const double> u) { return along(a, e, u[0]); };
    piece.project = [a, e](const Point& f) {
      return std::vector<double>{std::clamp(dot(f - a, e) / norm_squared(e), 0.0, 1.0)};
    };
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

// Refines a 1D piece: coarse grid plus focus clusters, then golden search on
// the brackets of the best local maxima.
void refine_curve(const Piece& piece, const BoundaryObjective& f, const SupOptions& options, std::size_t budget,
                  Best& best, int& rounds, double& residual) {
  const double lo = piece.lo[0];
  const double hi = piece.hi[0];
  const double length = hi - lo;
  const bool periodic = piece.periodic[0];
  std::vector<double> us;
  const std::size_t m = std::max<std::size_t>(budget, 16);
  for (std::size_t k = 0; k < m; ++k) {
    us.push_back(lo + length * static_cast<double>(k) / static_cast<double>(periodic ? m : m - 1));
  }
  for (const Point& focus : options.focus) {
    const double u0 = piece.project(focus)[0];
    us.push_back(u0);
    for (int level = 1; level <= kFocusLevels; ++level) {
      const double off = length * std::ldexp(1.0, -level);
      for (double u : {u0 - off, u0 + off}) {
        if (periodic) {
          u = std::fmod(u - lo, length);
          if (u < 0.0) u += length;
          u += lo;
        }
        if (u >= lo && u <= hi) us.push_back(u);
      }
    }
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());

  auto g = [&](double u) {
    const double arr[1] = {u};
    return safe_eval(f, piece.map(arr));
  };
  std::vector<double> vals(us.size());
  for (std::size_t k = 0; k < us.size(); ++k) {
    vals[k] = g(us[k]);
    const double arr[1] = {us[k]};
    best.offer(vals[k], piece.map(arr));
  }

  const std::size_t count = us.size();
  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k < count; ++k) {
    const bool has_left = periodic || k > 0;
    const bool has_right = periodic || k + 1 < count;
    const double left = has_left ? vals[(k + count - 1) % count] : -std::numeric_limits<double>::infinity();
    const double right = has_right ? vals[(k + 1) % count] : -std::numeric_limits<double>::infinity();
    if (vals[k] >= left && vals[k] >= right) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
    return vals[a] != vals[b] ? vals[a] > vals[b] : a < b;
  });
  if (peaks.size() > options.candidates) peaks.resize(options.candidates);

  for (std::size_t k : peaks) {
    double a = k > 0 ? us[k - 1] : (periodic ? us[count - 1] - length : us[k]);
    double b = k + 1 < count ? us[k + 1] : (periodic ? us[0] + length : us[k]);
    double best_u = us[k];
    double best_v = vals[k];
    double previous = best_v;
    for (int round = 1; round <= options.max_rounds; ++round) {
      if (b > a) std::tie(best_u, best_v) = golden_max(g, a, b, best_u, best_v);
      rounds = std::max(rounds, round);
      const double improvement = best_v - previous;
      previous = best_v;
      if (round > 1 && improvement < options.tol) {
        residual = std::max(residual, improvement);
        break;
      }
      // Re-bracket around the incumbent with a local scan before the next pass.
      const double width = std::max((b - a) / 8.0, 1e-12 * std::max(1.0, std::abs(best_u)));
      double na = best_u - width;
      double nb = best_u + width;
      if (!periodic) {
        na = std::max(na, lo);
        nb = std::min(nb, hi);
      }
      constexpr int kLocal = 33;
      double step_best_u = best_u;
      double step_best_v = best_v;
      for (int j = 0; j <= kLocal; ++j) {
        const double u = na + (nb - na) * j / kLocal;
        const double val = g(u);
        if (val > step_best_v) {
          step_best_v = val;
          step_best_u = u;
        }
      }
      const double step = (nb - na) / kLocal;
      a = periodic ? step_best_u - step : std::max(lo, step_best_u - step);
      b = periodic ? step_best_u + step : std::min(hi, step_best_u + step);
      best_u = step_best_u;
      best_v = step_best_v;
    }
    const double arr[1] = {best_u};
    best.offer(best_v, piece.map(arr));
  }
}

// Cyclic coordinate golden search for pieces with two or more parameters.
void refine_patch(const Piece& piece, const BoundaryObjective& f, const SupOptions& options, std::size_t budget,
                  Best& best, int& rounds, double& residual) {
  const std::size_t d = piece.dims();
  const auto m = std::max<std::size_t>(
      4, static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(budget), 1.0 / static_cast<double>(d)))));
  struct Sample {
    std::vector<double> u;
    double v;
  };
  std::vector<Sample> samples;
  std::vector<std::size_t> idx(d, 0);
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= m;
  auto coord = [&](std::size_t k, std::size_t i) {
    const double span = piece.hi[k] - piece.lo[k];
    return piece.lo[k] + span * static_cast<double>(i) / static_cast<double>(piece.periodic[k] ? m : m - 1);
  };
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<double> u(d);
    for (std::size_t k = 0; k < d; ++k) u[k] = coord(k, idx[k]);
    samples.push_back({u, safe_eval(f, piece.map(u))});
    for (std::size_t k = 0; k < d; ++k) {
      if (++idx[k] < m) break;
      idx[k] = 0;
    }
  }
  auto clamped = [&](std::vector<double> u) {
    for (std::size_t k = 0; k < d; ++k) u[k] = std::clamp(u[k], piece.lo[k], piece.hi[k]);
    return u;
  };
  std::vector<std::vector<double>> anchors;
  for (const Point& focus : options.focus) anchors.push_back(clamped(piece.project(focus)));
  for (const auto& u : anchors) samples.push_back({u, safe_eval(f, piece.map(u))});
  // Lines through pairs of focus projections, densest near the anchors.
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      std::vector<double> ts;
      for (int k = -64; k <= 128; ++k) ts.push_back(k / 64.0);
      for (int level = 1; level <= kFocusLevels; ++level) {
        const double off = std::ldexp(1.0, -level);
        for (double t : {-off, off, 1.0 - off, 1.0 + off}) ts.push_back(t);
      }
      for (double t : ts) {
        std::vector<double> u(d);
        for (std::size_t k = 0; k < d; ++k) u[k] = anchors[i][k] + t * (anchors[j][k] - anchors[i][k]);
        u = clamped(std::move(u));
        samples.push_back({u, safe_eval(f, piece.map(u))});
      }
    }
  }
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.v > b.v; });
  if (samples.size() > options.candidates) samples.resize(options.candidates);

  for (Sample& s : samples) {
    std::vector<double> width(d);
    for (std::size_t k = 0; k < d; ++k) width[k] = (piece.hi[k] - piece.lo[k]) / static_cast<double>(m - 1);
    double value = s.v;
    int quiet = 0;
    for (int round = 1; round <= options.max_rounds * 8; ++round) {
      const double before = value;
      const std::vector<double> start = s.u;
      for (std::size_t k = 0; k < d; ++k) {
        auto g = [&](double t) {
          std::vector<double> u = s.u;
          u[k] = t;
          return safe_eval(f, piece.map(u));
        };
        double a = s.u[k] - width[k];
        double b = s.u[k] + width[k];
        if (!piece.periodic[k]) {
          a = std::max(a, piece.lo[k]);
          b = std::min(b, piece.hi[k]);
        }
        if (b > a) std::tie(s.u[k], value) = golden_max(g, a, b, s.u[k], value);
      }
      // Pattern move along the net displacement of this sweep.
      std::vector<double> step(d);
      bool moved = false;
      for (std::size_t k = 0; k < d; ++k) {
        step[k] = s.u[k] - start[k];
        moved = moved || step[k] != 0.0;
      }
      if (moved) {
        const std::vector<double> base = s.u;
        auto g = [&](double t) {
          std::vector<double> u(d);
          for (std::size_t k = 0; k < d; ++k) u[k] = base[k] + t * step[k];
          return safe_eval(f, piece.map(clamped(std::move(u))));
        };
        const auto [t, val] = golden_max(g, -1.0, 4.0, 0.0, value);
        for (std::size_t k = 0; k < d; ++k) s.u[k] = base[k] + t * step[k];
        s.u = clamped(std::move(s.u));
        value = val;
      }
      rounds = std::max(rounds, round);
      const double improvement = value - before;
      bool narrow = true;
      for (std::size_t k = 0; k < d; ++k) {
        width[k] = std::max(0.5 * width[k], 4.0 * std::abs(s.u[k] - start[k]));
        width[k] = std::min(width[k], piece.hi[k] - piece.lo[k]);
        narrow = narrow && width[k] < 1e-9 * (piece.hi[k] - piece.lo[k]);
      }
      quiet = improvement < options.tol ? quiet + 1 : 0;
      if (quiet >= 3 || (improvement < options.tol && narrow)) {
        residual = std::max(residual, improvement);
        break;
      }
    }
    best.offer(value, piece.map(s.u));
  }
}

}  // namespace

SupResult sup_oracle(const Domain& domain, const BoundaryObjective& objective, const SupOptions& options) {
  if (!(options.tol > 0.0)) throw RangeError("sup_oracle needs tol > 0");
  std::vector<Point> discrete;
  const std::vector<Piece> pieces = pieces_of(domain, options, discrete);

  Best best;
  for (const Point& z : discrete) best.offer(safe_eval(objective, z), z);

  int rounds = 0;
  double residual = 0.0;
  if (!pieces.empty()) {
    const std::size_t share = std::max<std::size_t>(options.coarse_budget / pieces.size(), 16);
    for (const Piece& piece : pieces) {
      if (piece.dims() == 1) {
        refine_curve(piece, objective, options, share, best, rounds, residual);
      } else {
        refine_patch(piece, objective, options, share, best, rounds, residual);
      }
    }
  }
  return SupResult{best.value, best.point, rounds, residual};
}

SupResult sup_oracle(const Domain& domain, const BoundaryObjective& objective, double tol,
                     std::optional<Window> window) {
  SupOptions options;
  options.tol = tol;
  options.window = window;
  return sup_oracle(domain, objective, options);
}

}  // namespace hypmetrics
