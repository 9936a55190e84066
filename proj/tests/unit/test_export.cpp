#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <hypmetrics/export.hpp>
#include <hypmetrics/halfspace.hpp>

using namespace hypmetrics;
using std::numbers::pi;

namespace {

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (std::size_t pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++n;
  return n;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(TraceCsv, HeaderAndRows) {
  const Domain d = Domain::punctured({{0.0, 0.0}});
  const BallTrace t = trace_ball(d, MetricKind::S, Point{1.0, 0.0}, 0.5, 64);
  std::ostringstream one;
  write_trace_csv(one, {t});
  EXPECT_EQ(first_line(one.str()), "x,y,residual");
  EXPECT_EQ(count(one.str(), "\n"), 65u);

  std::ostringstream two;
  write_trace_csv(two, {t, trace_ball(d, MetricKind::S, Point{1.0, 0.0}, 0.3, 64)});
  EXPECT_EQ(first_line(two.str()), "radius,x,y,residual");
  EXPECT_EQ(count(two.str(), "\n"), 129u);
}

TEST(CurveCsv, Header) {
  std::ostringstream out;
  write_curve_csv(out, vball_curve(pi / 4, 16).polyline);
  EXPECT_EQ(first_line(out.str()), "y1,y2");
}

TEST(Svg, SingleRootDeterministicWithObstacles) {
  const Domain d = Domain::punctured({{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}});
  SvgFigure fig;
  fig.domain = d;
  for (double r : {0.4, 0.5, 0.6}) {
    for (SvgLayer& l : trace_layers(trace_ball(d, MetricKind::S, Point{0.75, 0.6}, r, 360))) {
      fig.layers.push_back(std::move(l));
    }
  }
  fig.markers.push_back(Point{0.75, 0.6});
  const std::string a = render_svg(fig);
  EXPECT_EQ(a, render_svg(fig));
  EXPECT_EQ(count(a, "<svg"), 1u);
  EXPECT_EQ(count(a, "</svg>"), 1u);
  EXPECT_EQ(count(a, "<title>"), 3u);
  EXPECT_EQ(count(a, "<path"), 6u);
  EXPECT_EQ(count(a, "<circle"), 1u);
  EXPECT_EQ(a.find("nan"), std::string::npos);
}

TEST(Svg, TruncatedTraceSplitsIntoOpenRuns) {
  const BallTrace t = trace_ball(Domain::punctured({{0.0, 0.0}}), MetricKind::V, Point{1.0, 0.0}, pi / 4, 360);
  const auto layers = trace_layers(t);
  ASSERT_FALSE(layers.empty());
  for (const SvgLayer& l : layers) EXPECT_FALSE(l.closed);
}
