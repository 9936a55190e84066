// Prints one PASS/FAIL line per acceptance criterion. With a criterion number
// as argument only that criterion runs; the exit status is nonzero when any
// blocking criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include <hypmetrics/hypmetrics.hpp>

#include "cli/cli.hpp"
#include "support/oracles.hpp"

using namespace hypmetrics;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome closed_form_vs_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> log_h(std::log(1e-3), std::log(1e3));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double hx = std::exp(log_h(rng));
    const double hy = std::exp(log_h(rng));
    const Point x{u(rng) * 3.0 * std::max(hx, hy), hx};
    const Point y{u(rng) * 3.0 * std::max(hx, hy), hy};
    SupOptions opt;
    opt.tol = 1e-10;
    const double w = 20.0 * (norm(x) + norm(y) + 1.0);
    opt.window = Window{-w, w};
    opt.focus = {x, y};
    const double ref = sup_oracle(Domain::half_space(), [&](const Point& z) { return angle_at(x, z, y); }, opt).value;
    worst = std::max(worst, std::abs(v_halfplane(x, y) - ref));
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-7 && elapsed < 30.0,
          fmt::format("1000 pairs, max |v_halfplane - oracle| = {:.2e} (< 1e-7), {:.1f} s (< 30 s)", worst, elapsed)};
}

Outcome curve_fidelity() {
  double worst_v = 0.0;
  double worst_end = 0.0;
  for (double r : {pi / 6, pi / 4, pi / 3}) {
    const VBallCurve c = vball_curve(r, 1000);
    std::size_t checked = 0;
    for (const Point& y : c.polyline) {
      worst_v = std::max(worst_v, std::abs(v_halfplane(Point{0.0, 1.0}, y) - r));
      ++checked;
    }
    if (checked < 1000) return {false, "curve has fewer than 1000 samples"};
    const double sec2 = 1.0 / (std::cos(r) * std::cos(r));
    worst_end = std::max(worst_end, std::abs(c.b1 - (2.0 * (1.0 - std::sin(r)) * sec2 - 1.0)));
    worst_end = std::max(worst_end, std::abs(c.b2 - (2.0 * (1.0 + std::sin(r)) * sec2 - 1.0)) / c.b2);
    if (r == pi / 3) {
      worst_end = std::max(worst_end, std::abs(c.b1 - (7.0 - 4.0 * std::sqrt(3.0))));
      worst_end = std::max(worst_end, std::abs(c.b2 - (7.0 + 4.0 * std::sqrt(3.0))) / c.b2);
    }
  }
  return {worst_v < 1e-8 && worst_end < 1e-12,
          fmt::format("max |v(i,y) - r| = {:.2e} (< 1e-8), endpoint error = {:.2e} (< 1e-12)", worst_v, worst_end)};
}

Outcome sharp_inclusions() {
  const auto start = std::chrono::steady_clock::now();
  const Domain g = Domain::punctured({Point{0.0, 0.0}});
  const MetricKind kinds[] = {MetricKind::S, MetricKind::J, MetricKind::K,
                              MetricKind::P, MetricKind::Q, MetricKind::Euclidean};
  std::size_t total = 0;
  std::size_t failed = 0;
  std::size_t locus_na = 0;
  std::ostringstream detail;
  for (MetricKind m : kinds) {
    std::size_t kind_failed = 0;
    double kind_worst_margin = INFINITY;
    double kind_worst_gap = -INFINITY;
    double kind_worst_locus = 0.0;
    for (double a : {0.1, 1.0, 10.0}) {
      for (int k = 1; k <= 30; ++k) {
        const double r = pi * k / 30.0;
        const InclusionReport rep =
            verify_inclusion(g, {m, best_radius(m, a, r)}, {MetricKind::V, r}, Point{a, 0.0}, 10000);
        ++total;
        const bool located = !rep.locus_error || *rep.locus_error <= pi / 180.0;
        if (!rep.locus_error) ++locus_na;
        const bool ok = rep.min_margin >= -1e-9 && rep.sharpness_gap <= 1e-3 && located;
        kind_worst_margin = std::min(kind_worst_margin, rep.min_margin);
        kind_worst_gap = std::max(kind_worst_gap, rep.sharpness_gap);
        if (rep.locus_error) kind_worst_locus = std::max(kind_worst_locus, *rep.locus_error);
        if (!ok) {
          ++failed;
          ++kind_failed;
          if (kind_failed <= 3) {
            detail << fmt::format("    {} |x|={} r={:.4f}: margin {:.3e}, gap {:.3e}{}\n", to_string(m), a, r,
                                  rep.min_margin, rep.sharpness_gap, located ? "" : ", extremal point off |y|=|x|");
          }
        }
      }
    }
    std::cout << fmt::format("  {:<9} failures {:>2}/90, min margin {:.3e}, max gap {:.3e}, max locus error {:.4f} deg\n",
                             to_string(m), kind_failed, kind_worst_margin, kind_worst_gap,
                             kind_worst_locus * 180.0 / pi);
  }
  std::cout << detail.str();
  const double elapsed = seconds_since(start);
  return {failed == 0 && elapsed < 120.0,
          fmt::format("{} of {} cases hold sharply (locus n/a in {} boundary-contact cases), {:.1f} s (< 120 s)",
                      total - failed, total, locus_na, elapsed)};
}

Outcome halfspace_sandwich() {
  std::size_t failures = 0;
  double worst_margin = INFINITY;
  double worst_outer1 = 0.0;
  double worst_end = 0.0;
  for (const Point& x : {Point{0.0, 1.0}, Point{5.0, 2.0, 3.0}}) {
    for (int k = 0; k < 20; ++k) {
      const double r = 0.05 + (1.5 - 0.05) * (k + 0.5) / 20.0;
      const HalfspaceSuite s = halfspace_inclusion_suite(x, r, 100000);
      for (const InclusionReport& rep : s.reports) {
        worst_margin = std::min(worst_margin, rep.min_margin);
        if (rep.min_margin < -1e-9) ++failures;
        if (rep.label == "outer1") {
          worst_outer1 = std::max(worst_outer1, rep.sharpness_gap);
          if (!(rep.sharpness_gap < 1e-4)) ++failures;
        }
      }
      const double end = std::max(std::abs(s.endpoint_offset_b1), std::abs(s.endpoint_offset_b2));
      worst_end = std::max(worst_end, end);
      if (end > 1e-9) ++failures;
    }
  }
  return {failures == 0, fmt::format("min margin {:.2e} (>= -1e-9), max outer1 gap {:.2e} (< 1e-4), "
                                     "max endpoint offset {:.2e} (< 1e-9)",
                                     worst_margin, worst_outer1, worst_end)};
}

Outcome convexity_threshold() {
  struct Case {
    Domain d;
    Point c;
    double r;
    bool expect_convex;
    const char* name;
  };
  const Domain one = Domain::punctured({Point{0.0, 0.0}});
  const Domain three = Domain::punctured({Point{0.0, 0.0}, Point{2.0, 0.0}, Point{0.0, 2.0}});
  const std::vector<Case> cases = {{one, Point{1.0, 0.0}, 0.50, true, "R2\\{0} r=0.50"},
                                   {one, Point{1.0, 0.0}, 0.51, false, "R2\\{0} r=0.51"},
                                   {three, Point{0.75, 0.6}, 0.5, true, "three obstacles r=0.5"},
                                   {three, Point{0.75, 0.6}, 0.6, false, "three obstacles r=0.6"}};
  bool pass = true;
  std::string summary;
  for (const Case& c : cases) {
    const ConvexityReport a = convexity_check(trace_ball(c.d, MetricKind::S, c.c, c.r, 720));
    const ConvexityReport b = convexity_check(trace_ball(c.d, MetricKind::S, c.c, c.r, 1440));
    const bool ok = a.convex == c.expect_convex && b.convex == c.expect_convex;
    pass = pass && ok;
    std::cout << fmt::format("  {:<22} 720 rays: {} (dev {:.2e}, tol {:.2e}); 1440 rays: {} (dev {:.2e})\n", c.name,
                             a.convex ? "convex" : "nonconvex", a.max_deviation, a.tol,
                             b.convex ? "convex" : "nonconvex", b.max_deviation);
  }
  summary = "expected verdicts at 720 and 1440 rays";
  return {pass, summary};
}

Outcome starlikeness() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int configs = 0;
  double worst = 0.0;
  bool pass = true;
  while (configs < 100) {
    const int n = 1 + static_cast<int>(u(rng) * 5);
    std::vector<Point> obstacles;
    for (int i = 0; i < n; ++i) obstacles.push_back(oracle::random_in_box(rng, 2, -3.0, 3.0));
    bool distinct = true;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) distinct = distinct && distance(obstacles[i], obstacles[j]) > 1e-6;
    }
    if (!distinct) continue;
    const Domain d = Domain::punctured(obstacles);
    const Point c = oracle::random_in_box(rng, 2, -3.0, 3.0);
    if (!d.contains(c) || dist_to_boundary(d, c) < 1e-3) continue;
    const double r = 1.0 - u(rng);
    const StarlikeReport rep = starlike_check(d, MetricKind::S, c, r, 180, 48, 1e-12);
    worst = std::max(worst, rep.max_violation);
    pass = pass && rep.starlike;
    ++configs;
  }
  return {pass, fmt::format("100 configurations, max ray-monotonicity violation {:.2e} (<= 1e-12)", worst)};
}

Outcome kinks() {
  double worst_sym = 0.0;
  double worst_m1 = 0.0;
  double worst_fd = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double r = 0.03 + (1.5 - 0.03) * k / 49.0;
    const KinkTangents t = kink_and_tangents(r);
    const VBallCurve c = vball_curve(r, 8);
    worst_sym = std::max(worst_sym, std::abs(t.slope_f1_at_b1 + t.slope_f2_at_b1));
    worst_m1 = std::max(worst_m1, std::abs(t.slope_f2_at_b1 - t.slope_l1) / std::max(1.0, std::abs(t.slope_l1)));
    const double h = 1e-6 * c.b1;
    const auto f1 = [&](double y2) { return c.left_branch(y2); };
    const auto f2 = [&](double y2) { return c.right_branch(y2); };
    const auto rel = [](double fd, double exact) { return std::abs(fd - exact) / std::max(1.0, std::abs(exact)); };
    worst_fd = std::max(worst_fd, rel(oracle::forward_slope(f1, c.b1, h), t.slope_f1_at_b1));
    worst_fd = std::max(worst_fd, rel(oracle::forward_slope(f2, c.b1, h), t.slope_f2_at_b1));
  }
  return {worst_sym <= 1e-10 && worst_m1 <= 1e-10 && worst_fd <= 1e-5,
          fmt::format("50 radii: |f1'+f2'| {:.2e}, |f2'-m1| {:.2e} (<= 1e-10), finite differences {:.2e} (<= 1e-5)",
                      worst_sym, worst_m1, worst_fd)};
}

Outcome conjecture_p() {
  std::vector<double> grid;
  for (int k = 0; k <= 30; ++k) grid.push_back(0.35 + 0.005 * k);
  const ThresholdScan s =
      convexity_threshold_scan(Domain::punctured({Point{0.0, 0.0}}), MetricKind::P, Point{1.0, 0.0}, grid);
  if (!s.last_convex || !s.first_nonconvex) return {false, "scan produced no bracket"};
  const double width = *s.first_nonconvex - *s.last_convex;
  const double target = std::numbers::sqrt2 - 1.0;
  const bool contains = *s.last_convex <= target && target <= *s.first_nonconvex;
  return {width <= 0.01 + 1e-12,
          fmt::format("bracket [{:.3f}, {:.3f}], width {:.3f} (<= 0.01); contains sqrt(2)-1 = {:.4f}: {} (reported only)",
                      *s.last_convex, *s.first_nonconvex, width, target, contains ? "yes" : "no")};
}

Outcome figures() {
  const std::string domains = HYPMETRICS_DOMAINS_DIR;
  const std::vector<std::vector<std::string>> commands = {
      {"ball", "--metric", "s", "--domain", domains + "/punct3.json", "--center", "0.75,0.6", "--radius",
       "0.4,0.5,0.6"},
      {"ball", "--metric", "v", "--domain", domains + "/halfspace2.json", "--center", "0,1", "--radius",
       "0.5236,0.7854,1.0472"}};
  bool pass = true;
  std::size_t bytes = 0;
  for (const auto& args : commands) {
    std::ostringstream a;
    std::ostringstream b;
    std::ostringstream err;
    const int ca = cli::run(args, a, err);
    const int cb = cli::run(args, b, err);
    const std::string& svg = a.str();
    const bool ok = ca == 0 && cb == 0 && svg == b.str() && svg.find("<svg") != std::string::npos &&
                    svg.find("<svg", svg.find("<svg") + 1) == std::string::npos &&
                    svg.find("<path") != std::string::npos;
    pass = pass && ok;
    bytes += svg.size();
  }
  return {pass, fmt::format("Figure-1 and Figure-4 SVGs byte-identical across runs ({} bytes)", bytes)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  bool blocking = true;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "closed-form v vs oracle on H2", closed_form_vs_oracle},
      {2, "v-ball curve fidelity", curve_fidelity},
      {3, "sharp inclusion suite in R2\\{0}", sharp_inclusions},
      {4, "half-space sandwich", halfspace_sandwich},
      {5, "convexity threshold", convexity_threshold},
      {6, "starlikeness of s-balls", starlikeness},
      {7, "kink and tangency identities", kinks},
      {8, "p-ball convexity experiment", conjecture_p, false},
      {9, "figure reproduction", figures},
  };
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all_pass = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const Outcome o = c.run();
    std::cout << fmt::format("{} {}: {}: {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.summary) << std::flush;
    if (c.blocking) all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
