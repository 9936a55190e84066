#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <hypmetrics/errors.hpp>
#include <hypmetrics/halfspace.hpp>
#include <hypmetrics/inclusions.hpp>

#include "support/frozen.hpp"
#include "support/oracles.hpp"

using namespace hypmetrics;
using std::numbers::pi;

namespace {

const Point e1{1.0, 0.0};

Domain origin() { return Domain::punctured({{0.0, 0.0}}); }

InclusionReport check(MetricKind m, double norm_x, double r, std::size_t samples = 2000) {
  const double t = best_radius(m, norm_x, r);
  return verify_inclusion(origin(), {m, t}, {MetricKind::V, r}, norm_x * e1, samples);
}

constexpr MetricKind kSharpKinds[] = {MetricKind::S, MetricKind::J, MetricKind::K, MetricKind::P, MetricKind::Q,
                                      MetricKind::Euclidean};

}  // namespace

TEST(BestRadius, Examples) {
  EXPECT_NEAR(best_radius(MetricKind::S, 1.0, pi / 2), frozen::k_best_s_pi2, 1e-15);
  EXPECT_NEAR(best_radius(MetricKind::J, 1.0, pi), frozen::k_best_j_pi, 1e-15);
  EXPECT_EQ(best_radius(MetricKind::K, 7.0, 1.3), 1.3);
  EXPECT_NEAR(best_radius(MetricKind::Q, 1.0, pi / 2), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(best_radius(MetricKind::P, 1.0, pi / 2), frozen::k_best_p_pi2, 1e-15);
  EXPECT_NEAR(best_radius(MetricKind::Euclidean, 2.0, pi / 6), 1.0, 1e-15);
  EXPECT_EQ(best_radius(MetricKind::Euclidean, 2.0, 2.0), 2.0);
}

TEST(BestRadius, Errors) {
  EXPECT_THROW(best_radius(MetricKind::S, 1.0, 0.0), RangeError);
  EXPECT_THROW(best_radius(MetricKind::S, 1.0, 3.2), RangeError);
  EXPECT_THROW(best_radius(MetricKind::Euclidean, 0.0, 1.0), RangeError);
  EXPECT_THROW(best_radius(MetricKind::V, 1.0, 1.0), UnsupportedMetric);
}

TEST(BestRadius, NondecreasingInR) {
  for (MetricKind m : kSharpKinds) {
    for (double a : {0.1, 1.0, 10.0}) {
      double prev = 0.0;
      for (int k = 1; k <= 1000; ++k) {
        const double r = pi * k / 1000.0;
        const double t = best_radius(m, a, r);
        EXPECT_GE(t, prev) << to_string(m) << " a=" << a << " r=" << r;
        prev = t;
      }
    }
  }
}

TEST(VerifyInclusion, SharpRadiusForS) {
  const InclusionReport rep = check(MetricKind::S, 1.0, pi / 3, 10000);
  EXPECT_TRUE(rep.holds);
  EXPECT_GE(rep.min_margin, -1e-9);
  EXPECT_LT(rep.sharpness_gap, 1e-3);
  EXPECT_NEAR(norm(rep.worst_point), 1.0, 1e-3);
  ASSERT_TRUE(rep.locus_error.has_value());
  EXPECT_LT(*rep.locus_error, pi / 180);
}

TEST(VerifyInclusion, LargerRadiusBreaks) {
  const double r = pi / 3;
  const InclusionReport rep =
      verify_inclusion(origin(), {MetricKind::S, std::sin(r / 2) + 0.01}, {MetricKind::V, r}, e1, 10000);
  EXPECT_FALSE(rep.holds);
  EXPECT_LT(rep.min_margin, -1e-3);
  EXPECT_NEAR(norm(rep.worst_point), 1.0, 0.05);
}

TEST(VerifyInclusion, DegenerateEuclideanBall) {
  const InclusionReport rep = verify_inclusion(origin(), {MetricKind::Euclidean, 0.0}, {MetricKind::V, 0.7}, e1, 100);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.min_margin, 0.7);
}

TEST(VerifyInclusion, SharpRadiiOnUnitSphere) {
  for (MetricKind m : kSharpKinds) {
    for (double r : {0.2, 0.9, 1.6, 2.4, 3.1}) {
      const InclusionReport rep = check(m, 1.0, r);
      EXPECT_TRUE(rep.holds) << to_string(m) << " r=" << r << " margin " << rep.min_margin;
      EXPECT_LE(rep.sharpness_gap, 1e-3) << to_string(m) << " r=" << r;
      EXPECT_GE(rep.sharpness_gap, -1e-9) << to_string(m) << " r=" << r;
      if (rep.locus_error) {
        EXPECT_LT(*rep.locus_error, pi / 180) << to_string(m) << " r=" << r;
      }
    }
  }
}

TEST(VerifyInclusion, ScaleFreeRadiiAtEveryNorm) {
  for (MetricKind m : {MetricKind::S, MetricKind::J, MetricKind::K, MetricKind::P}) {
    for (double r : {0.3, 1.2, 2.7}) {
      const InclusionReport a = check(m, 1.0, r);
      for (double lambda : {0.1, 10.0}) {
        const InclusionReport b = check(m, lambda, r);
        EXPECT_EQ(a.holds, b.holds) << to_string(m);
        EXPECT_NEAR(a.min_margin, b.min_margin, 1e-6) << to_string(m) << " r=" << r;
      }
    }
  }
}

TEST(VerifyInclusion, EuclideanScaleCovariance) {
  for (double r : {0.3, 1.2, 2.7}) {
    const InclusionReport a = check(MetricKind::Euclidean, 1.0, r);
    for (double lambda : {0.1, 10.0}) {
      const InclusionReport b = check(MetricKind::Euclidean, lambda, r);
      EXPECT_EQ(a.holds, b.holds);
      EXPECT_NEAR(a.min_margin, b.min_margin, 1e-6);
    }
  }
}

// The chordal radius is exact on |x| = 1 but too large elsewhere: q is not
// dilation invariant, and along the sector edge q(x, .) is minimized at
// |y| = ((a^2 - 1) + sqrt((1 - a^2)^2 + 4 a^2 cos^2 r)) / (2 a cos r).
TEST(ChordalRadius, TooLargeOffTheUnitSphere) {
  for (double a : {0.1, 10.0}) {
    const InclusionReport rep = check(MetricKind::Q, a, 1.0);
    EXPECT_FALSE(rep.holds) << "a=" << a;
    EXPECT_LT(rep.min_margin, -1e-3);
  }
  for (double a : {0.1, 0.5, 2.0, 10.0}) {
    for (double r : {0.3, 1.0}) {
      const Point x = a * e1;
      const auto q_on_edge = [&](double rho) { return -q_chordal(x, Point{rho * std::cos(r), rho * std::sin(r)}); };
      const double c = std::cos(r);
      const double predicted = ((a * a - 1) + std::sqrt((1 - a * a) * (1 - a * a) + 4 * a * a * c * c)) / (2 * a * c);
      double best_rho = 0.0;
      double best = -INFINITY;
      for (int k = 1; k <= 200000; ++k) {
        const double rho = 50.0 * k / 200000.0;
        if (q_on_edge(rho) > best) {
          best = q_on_edge(rho);
          best_rho = rho;
        }
      }
      EXPECT_NEAR(best_rho, predicted, 1e-3) << "a=" << a << " r=" << r;
      EXPECT_LT(-best, best_radius(MetricKind::Q, a, r)) << "a=" << a << " r=" << r;
    }
  }
}

TEST(VerifyInclusion, BoundaryContactForWideEuclideanBalls) {
  const InclusionReport rep = check(MetricKind::Euclidean, 1.0, 2.0);
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rep.boundary_contact);
  EXPECT_LE(rep.sharpness_gap, 0.0);
  EXPECT_FALSE(rep.notes.empty());
}

TEST(PredictedExtremal, OnTheSphereOfX) {
  const Point x{3.0, 4.0};
  for (MetricKind m : {MetricKind::S, MetricKind::J, MetricKind::K, MetricKind::P, MetricKind::Q}) {
    const auto pts = predicted_extremal(m, x, Point{0.0, 0.0}, 0.8, Point{0.0, 1.0});
    ASSERT_EQ(pts.size(), 2u);
    for (const Point& p : pts) {
      EXPECT_NEAR(norm(p), 5.0, 1e-12);
      EXPECT_NEAR(angle_at(p, Point{0.0, 0.0}, x), 0.8, 1e-12);
    }
  }
}

TEST(HalfspaceSuite, PiOverSixAllHold) {
  const HalfspaceSuite s = halfspace_inclusion_suite(Point{0.0, 1.0}, pi / 6, 10000);
  ASSERT_EQ(s.reports.size(), 4u);
  for (const InclusionReport& r : s.reports) {
    EXPECT_TRUE(r.holds) << r.label;
    EXPECT_GE(r.min_margin, -1e-9) << r.label;
  }
  EXPECT_EQ(s.reports[1].label, "inner2");
  EXPECT_LT(s.reports[1].sharpness_gap, 1e-6);
  EXPECT_FALSE(s.reports[1].notes.empty());
}

TEST(HalfspaceSuite, Outer1SharpAndEndpointsOnSphere) {
  const HalfspaceSuite s = halfspace_inclusion_suite(Point{0.0, 1.0}, pi / 4, 100000);
  const InclusionReport& outer1 = s.reports[2];
  EXPECT_EQ(outer1.label, "outer1");
  EXPECT_LT(outer1.sharpness_gap, 1e-4);
  EXPECT_LT(std::abs(s.endpoint_offset_b1), 1e-9);
  EXPECT_LT(std::abs(s.endpoint_offset_b2), 1e-9);
}

TEST(HalfspaceSuite, SimilarityInvariantMargins) {
  const HalfspaceSuite a = halfspace_inclusion_suite(Point{0.0, 1.0}, pi / 6, 5000);
  const HalfspaceSuite b = halfspace_inclusion_suite(Point{5.0, 2.0, 3.0}, pi / 6, 5000);
  ASSERT_EQ(a.reports.size(), b.reports.size());
  for (std::size_t k = 0; k < a.reports.size(); ++k) {
    EXPECT_EQ(a.reports[k].holds, b.reports[k].holds);
    EXPECT_NEAR(a.reports[k].min_margin, b.reports[k].min_margin, 1e-9) << a.reports[k].label;
  }
}

TEST(HalfspaceSuite, Errors) {
  EXPECT_THROW(halfspace_inclusion_suite(Point{0.0, 1.0}, pi / 2, 100), RangeError);
  EXPECT_THROW(halfspace_inclusion_suite(Point{0.0, -1.0}, 0.5, 100), DomainError);
}

TEST(PTriangle, UnitDiskHasViolation) {
  const auto v = p_triangle_experiment(Domain::unit_ball(), 1000000, 1);
  ASSERT_TRUE(v.has_value());
  const Domain d = Domain::unit_ball();
  const double lhs = p_function(d, v->x, v->z);
  EXPECT_GT(lhs, p_function(d, v->x, v->y) + p_function(d, v->y, v->z));
  EXPECT_NEAR(lhs - p_function(d, v->x, v->y) - p_function(d, v->y, v->z), v->excess, 1e-12);
}

TEST(PTriangle, DeterministicForSeed) {
  const auto a = p_triangle_experiment(Domain::unit_ball(), 100000, 42);
  const auto b = p_triangle_experiment(Domain::unit_ball(), 100000, 42);
  ASSERT_EQ(a.has_value(), b.has_value());
  if (a) {
    EXPECT_EQ(a->trial, b->trial);
    EXPECT_EQ(a->x, b->x);
  }
}

TEST(PTriangle, PuncturedSpaceRunsToCompletion) {
  const auto v = p_triangle_experiment(origin(), 100000, 1);
  if (v) {
    EXPECT_GT(v->excess, 0.0);
  }
}
