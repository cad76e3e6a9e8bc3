#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "metrecon/synth.hpp"

using namespace metrecon;

namespace {

constexpr double kPi = std::numbers::pi;

double distance_to_curve(const Curve& c, std::span<const double> p) {
  if (c.kind == Curve::Kind::kArc) {
    // Closest point on the full circle, then clamp to the swept range by
    // also checking both endpoints.
    const double angle = std::atan2(p[1] - c.a[1], p[0] - c.a[0]);
    double best = INFINITY;
    const double lo = std::min(c.start_angle, c.start_angle + c.sweep);
    const double hi = std::max(c.start_angle, c.start_angle + c.sweep);
    for (int k = -2; k <= 2; ++k) {
      const double t = angle + 2 * kPi * k;
      if (t >= lo - 1e-12 && t <= hi + 1e-12) {
        best = std::abs(std::hypot(p[0] - c.a[0], p[1] - c.a[1]) - c.radius);
      }
    }
    for (double s : {0.0, c.length()}) {
      const auto q = c.point_at(s);
      best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1]));
    }
    return best;
  }
  const double dx = c.b[0] - c.a[0], dy = c.b[1] - c.a[1];
  const double t = std::clamp(((p[0] - c.a[0]) * dx + (p[1] - c.a[1]) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
  return std::hypot(p[0] - c.a[0] - t * dx, p[1] - c.a[1] - t * dy);
}

double distance_to_curves(std::span<const Curve> curves, std::span<const double> p) {
  double best = INFINITY;
  for (const auto& c : curves) best = std::min(best, distance_to_curve(c, p));
  return best;
}

double total_length(std::span<const Curve> curves) {
  double s = 0;
  for (const auto& c : curves) s += c.length();
  return s;
}

}  // namespace

TEST_CASE("curves") {
  const auto seg = Curve::segment({0, 0}, {3, 4});
  CHECK(seg.length() == 5.0);
  CHECK(seg.point_at(2.5)[0] == doctest::Approx(1.5));
  const auto arc = Curve::arc({1, 1}, 2, 0, kPi / 2);
  CHECK(arc.length() == doctest::Approx(kPi));
  const auto end = arc.point_at(arc.length());
  CHECK(end[0] == doctest::Approx(1.0));
  CHECK(end[1] == doctest::Approx(3.0));
  const auto cw = Curve::arc({0, 0}, 1, 0, -kPi / 2);
  CHECK(cw.length() == doctest::Approx(kPi / 2));
  CHECK(cw.point_at(cw.length())[1] == doctest::Approx(-1.0));
  CHECK_THROWS_AS(Curve::arc({0, 0}, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("shape lengths") {
  CHECK(total_length(shape_curves(ShapeKind::kCircle)) == doctest::Approx(2 * kPi));
  CHECK(total_length(shape_curves(ShapeKind::kTheta)) == doctest::Approx(2 * kPi + 2));
  CHECK(total_length(shape_curves(ShapeKind::kLollipop, 2.0)) == doctest::Approx(4 * kPi + 4));
  CHECK(total_length(shape_curves(ShapeKind::kYGraph)) == doctest::Approx(3.0));
  CHECK(total_length(shape_curves(ShapeKind::kSegment, 0.5)) == doctest::Approx(0.5));
  CHECK(total_length(shape_curves(ShapeKind::kFigureEight)) == doctest::Approx(4 * kPi));
  CHECK(parse_shape("figure_eight") == ShapeKind::kFigureEight);
  CHECK(parse_shape("y_graph") == ShapeKind::kYGraph);
  CHECK_THROWS_AS(parse_shape("square"), std::invalid_argument);
  CHECK_THROWS_AS(shape_curves(ShapeKind::kCircle, 0.0), std::invalid_argument);
}

TEST_CASE("noiseless samples lie on the shape") {
  const auto circle = sample_shape(ShapeKind::kCircle, {500, 0.0, 2.0, 0});
  CHECK(circle.size() == 500);
  for (std::size_t i = 0; i < circle.size(); ++i) {
    CHECK(std::abs(std::hypot(circle[i][0], circle[i][1]) - 2.0) <= 1e-12);
  }
  // Equal arc-length spacing.
  for (std::size_t i = 1; i < circle.size(); ++i) {
    CHECK(std::hypot(circle[i][0] - circle[i - 1][0], circle[i][1] - circle[i - 1][1]) ==
          doctest::Approx(2 * 2.0 * std::sin(kPi / 500)));
  }
  for (auto kind : {ShapeKind::kTheta, ShapeKind::kLollipop, ShapeKind::kYGraph, ShapeKind::kSegment,
                    ShapeKind::kFigureEight}) {
    const auto curves = shape_curves(kind, 1.5);
    const auto pts = sample_shape(kind, {300, 0.0, 1.5, 0});
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(distance_to_curves(curves, pts[i]) <= 1e-9);
  }
}

TEST_CASE("noise has the requested spread") {
  const double sigma = 0.05;
  const auto pts = sample_shape(ShapeKind::kCircle, {20000, sigma, 1.0, 9});
  double sum = 0, sum2 = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = std::hypot(pts[i][0], pts[i][1]) - 1.0;
    sum += r;
    sum2 += r * r;
  }
  const double n = static_cast<double>(pts.size());
  CHECK(std::abs(sum / n) < 0.005);
  CHECK(std::sqrt(sum2 / n) == doctest::Approx(sigma).epsilon(0.05));
  CHECK(sample_shape(ShapeKind::kCircle, {100, sigma, 1.0, 9}) ==
        sample_shape(ShapeKind::kCircle, {100, sigma, 1.0, 9}));
  CHECK_FALSE(sample_shape(ShapeKind::kCircle, {100, sigma, 1.0, 9}) ==
              sample_shape(ShapeKind::kCircle, {100, sigma, 1.0, 10}));
}

TEST_CASE("highway routes are continuous and right-handed") {
  const HighwayParams p;
  for (std::size_t r = 0; r < 8; ++r) {
    const auto route = highway_route(p, r);
    for (std::size_t i = 1; i < route.size(); ++i) {
      const auto a = route[i - 1].point_at(route[i - 1].length());
      const auto b = route[i].point_at(0.0);
      CHECK(std::hypot(a[0] - b[0], a[1] - b[1]) <= 1e-12);
    }
    const auto start = route.front().point_at(0.0);
    // Every route enters at the edge of the square, on its lane.
    CHECK(std::max(std::abs(start[0]), std::abs(start[1])) == doctest::Approx(p.half_length));
    CHECK(std::min(std::abs(start[0]), std::abs(start[1])) == doctest::Approx(p.half_width));
  }
  // Northbound uses the lane east of the axis; its right turn heads east.
  const auto north = highway_route(p, 0);
  CHECK(north.front().point_at(0.0)[0] == doctest::Approx(p.half_width));
  CHECK(north.front().point_at(0.0)[1] == doctest::Approx(-p.half_length));
  const auto turn = highway_route(p, 4);
  const auto end = turn.back().point_at(turn.back().length());
  CHECK(end[0] == doctest::Approx(p.half_length));
  CHECK(end[1] == doctest::Approx(-p.half_width));
  CHECK_THROWS_AS(highway_route({.half_width = 4.0}, 0), std::invalid_argument);
}

TEST_CASE("highway traces") {
  const HighwayParams p;
  const auto traces = highway_crossing(p);
  REQUIRE(traces.size() == 300);
  for (const auto& t : traces) CHECK(t.size() == 500);

  HighwayParams clean;
  clean.traces = 16;
  clean.samples = 200;
  clean.noise = 0.0;
  const auto exact = highway_crossing(clean);
  for (std::size_t t = 0; t < exact.size(); ++t) {
    const auto route = highway_route(clean, t % 8);
    const auto& s = exact[t].samples;
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(distance_to_curves(route, s[i]) <= 1e-9);
    const auto a = route.front().point_at(0.0);
    const auto b = route.back().point_at(route.back().length());
    CHECK(std::hypot(s[0][0] - a[0], s[0][1] - a[1]) <= 1e-9);
    CHECK(std::hypot(s[s.size() - 1][0] - b[0], s[s.size() - 1][1] - b[1]) <= 1e-9);
  }

  const auto again = highway_crossing(p);
  CHECK(again[17].samples == traces[17].samples);
  HighwayParams other = p;
  other.seed = 1;
  CHECK_FALSE(highway_crossing(other)[17].samples == traces[17].samples);
  CHECK_THROWS_AS(highway_crossing({.samples = 1}), std::invalid_argument);
}
