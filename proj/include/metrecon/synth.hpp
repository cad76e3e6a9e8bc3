#pragma once

// Synthetic fixtures: noisy samples of small planar metric graphs and
// simulated GPS traces through a highway crossing.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "metrecon/geometry.hpp"

namespace metrecon {

/// A straight segment or a circular arc, parametrized by arc length.
struct Curve {
  enum class Kind { kSegment, kArc };

  Kind kind = Kind::kSegment;
  std::array<double, 2> a{};  ///< segment start, or arc centre
  std::array<double, 2> b{};  ///< segment end (unused for arcs)
  double radius = 0.0;
  double start_angle = 0.0;
  double sweep = 0.0;  ///< signed, radians

  static Curve segment(std::array<double, 2> from, std::array<double, 2> to);
  static Curve arc(std::array<double, 2> centre, double radius, double start_angle, double sweep);

  double length() const;
  std::array<double, 2> point_at(double s) const;
};

enum class ShapeKind { kCircle, kTheta, kLollipop, kYGraph, kSegment, kFigureEight };

/// "circle", "theta", "lollipop", "y_graph", "segment", "figure_eight".
ShapeKind parse_shape(std::string_view name);

/// Pieces of each shape. `scale` is the circle radius (circle, theta,
/// lollipop, figure_eight) or the segment / spoke length.
///   circle       circle of radius s at the origin
///   theta        circle plus the diameter from (-s,0) to (s,0)
///   lollipop     circle plus the stick from (s,0) to (3s,0)
///   y_graph      three spokes of length s at 90, 210 and 330 degrees
///   segment      (0,0) to (s,0)
///   figure_eight circles of radius s centred at (-s,0) and (s,0)
std::vector<Curve> shape_curves(ShapeKind kind, double scale = 1.0);

struct ShapeParams {
  std::size_t n = 500;
  double noise = 0.0;  ///< standard deviation of Gaussian noise per coordinate
  double scale = 1.0;
  std::uint64_t seed = 0;
};

/// n points at arc lengths i L / n along the concatenated curves, plus noise.
PointCloud sample_curves(std::span<const Curve> curves, std::size_t n, double noise, std::uint64_t seed);
PointCloud sample_shape(ShapeKind kind, const ShapeParams& params);

/// Two perpendicular roads through the origin with one lane per direction
/// (right-hand traffic, lane centres half_width off the road axis) and a
/// quarter-circle ramp for every right turn. Roads span [-half_length,
/// half_length]; each ramp is tangent to both lanes it joins, centred at
/// distance ramp_radius from both axes.
struct HighwayParams {
  std::size_t traces = 300;
  std::size_t samples = 500;
  double half_length = 6.0;
  double half_width = 0.1;
  double ramp_radius = 3.0;
  double noise = 0.01;
  double speed_variation = 0.3;  ///< amplitude of the sinusoidal speed profile
  std::uint64_t seed = 0;
};

/// Route r (0..7): approach direction r % 4 (north, west, south, east
/// bound), straight when r < 4, right turn otherwise.
std::vector<Curve> highway_route(const HighwayParams& params, std::size_t route);

/// Trace t follows route t % 8 with a random smooth speed profile.
std::vector<Trace> highway_crossing(const HighwayParams& params);

}  // namespace metrecon
