#include "metrecon/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "metrecon/rng.hpp"

namespace metrecon {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<double, 2> rotate_quarter(std::array<double, 2> p, std::size_t turns) {
  for (std::size_t i = 0; i < turns % 4; ++i) p = {-p[1], p[0]};
  return p;
}

Curve rotate_quarter(Curve c, std::size_t turns) {
  c.a = rotate_quarter(c.a, turns);
  c.b = rotate_quarter(c.b, turns);
  c.start_angle += static_cast<double>(turns % 4) * 0.5 * kPi;
  return c;
}

// Locates arc length s on the concatenation; the last piece absorbs
// rounding at the far end.
std::array<double, 2> point_on(std::span<const Curve> curves, double s) {
  for (std::size_t i = 0; i + 1 < curves.size(); ++i) {
    const double len = curves[i].length();
    if (s < len) return curves[i].point_at(s);
    s -= len;
  }
  return curves.back().point_at(std::min(s, curves.back().length()));
}

double total_length(std::span<const Curve> curves) {
  double total = 0.0;
  for (const auto& c : curves) total += c.length();
  return total;
}

}  // namespace

Curve Curve::segment(std::array<double, 2> from, std::array<double, 2> to) {
  Curve c;
  c.kind = Kind::kSegment;
  c.a = from;
  c.b = to;
  return c;
}

Curve Curve::arc(std::array<double, 2> centre, double radius, double start_angle, double sweep) {
  if (!(radius > 0.0)) throw std::invalid_argument("arc radius must be positive");
  Curve c;
  c.kind = Kind::kArc;
  c.a = centre;
  c.radius = radius;
  c.start_angle = start_angle;
  c.sweep = sweep;
  return c;
}

double Curve::length() const {
  if (kind == Kind::kSegment) return std::hypot(b[0] - a[0], b[1] - a[1]);
  return radius * std::abs(sweep);
}

std::array<double, 2> Curve::point_at(double s) const {
  if (kind == Kind::kSegment) {
    const double len = length();
    const double t = len > 0.0 ? s / len : 0.0;
    return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
  }
  const double theta = start_angle + std::copysign(s / radius, sweep);
  return {a[0] + radius * std::cos(theta), a[1] + radius * std::sin(theta)};
}

ShapeKind parse_shape(std::string_view name) {
  if (name == "circle") return ShapeKind::kCircle;
  if (name == "theta") return ShapeKind::kTheta;
  if (name == "lollipop") return ShapeKind::kLollipop;
  if (name == "y_graph") return ShapeKind::kYGraph;
  if (name == "segment") return ShapeKind::kSegment;
  if (name == "figure_eight") return ShapeKind::kFigureEight;
  throw std::invalid_argument("unknown shape '" + std::string(name) + "'");
}

std::vector<Curve> shape_curves(ShapeKind kind, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("shape scale must be positive");
  const Curve circle = Curve::arc({0.0, 0.0}, s, 0.0, 2.0 * kPi);
  switch (kind) {
    case ShapeKind::kCircle:
      return {circle};
    case ShapeKind::kTheta:
      return {circle, Curve::segment({-s, 0.0}, {s, 0.0})};
    case ShapeKind::kLollipop:
      return {circle, Curve::segment({s, 0.0}, {3.0 * s, 0.0})};
    case ShapeKind::kYGraph: {
      std::vector<Curve> spokes;
      for (double deg : {90.0, 210.0, 330.0}) {
        const double t = deg * kPi / 180.0;
        spokes.push_back(Curve::segment({0.0, 0.0}, {s * std::cos(t), s * std::sin(t)}));
      }
      return spokes;
    }
    case ShapeKind::kSegment:
      return {Curve::segment({0.0, 0.0}, {s, 0.0})};
    case ShapeKind::kFigureEight:
      // Both loops start at the shared point (0,0).
      return {Curve::arc({-s, 0.0}, s, 0.0, 2.0 * kPi), Curve::arc({s, 0.0}, s, kPi, 2.0 * kPi)};
  }
  throw std::invalid_argument("unknown shape");
}

PointCloud sample_curves(std::span<const Curve> curves, std::size_t n, double noise, std::uint64_t seed) {
  if (curves.empty()) throw std::invalid_argument("no curves to sample");
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  if (!(noise >= 0.0)) throw std::invalid_argument("noise must be non-negative");
  Rng rng(seed);
  const double total = total_length(curves);
  PointCloud cloud(2);
  cloud.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = point_on(curves, total * static_cast<double>(i) / static_cast<double>(n));
    if (noise > 0.0) {
      p[0] += noise * rng.normal();
      p[1] += noise * rng.normal();
    }
    cloud.push_back(p);
  }
  return cloud;
}

PointCloud sample_shape(ShapeKind kind, const ShapeParams& params) {
  const auto curves = shape_curves(kind, params.scale);
  return sample_curves(curves, params.n, params.noise, params.seed);
}

std::vector<Curve> highway_route(const HighwayParams& p, std::size_t route) {
  const double h = p.half_width;
  const double l = p.half_length;
  const double r = p.ramp_radius;
  if (!(h > 0.0 && r > h && l > r)) {
    throw std::invalid_argument("highway needs 0 < half_width < ramp_radius < half_length");
  }
  // Northbound lane is x = +h; the right turn leaves it for the eastbound
  // lane y = -h.
  std::vector<Curve> canonical;
  if (route % 8 < 4) {
    canonical = {Curve::segment({h, -l}, {h, l})};
  } else {
    canonical = {Curve::segment({h, -l}, {h, -r}), Curve::arc({r, -r}, r - h, kPi, -0.5 * kPi),
                 Curve::segment({r, -h}, {l, -h})};
  }
  for (auto& c : canonical) c = rotate_quarter(c, route % 4);
  return canonical;
}

std::vector<Trace> highway_crossing(const HighwayParams& p) {
  if (p.samples < 2) throw std::invalid_argument("a trace needs at least 2 samples");
  if (!(p.speed_variation >= 0.0 && p.speed_variation < 1.0)) {
    throw std::invalid_argument("speed variation must lie in [0, 1)");
  }
  Rng rng(p.seed);
  std::vector<Trace> traces;
  traces.reserve(p.traces);
  for (std::size_t t = 0; t < p.traces; ++t) {
    const auto route = highway_route(p, t % 8);
    const double total = total_length(route);
    // Arc length phi(u) = u + a (sin(w u + c) - sin c) / w, normalised to
    // phi(1) = 1; monotone because a < 1.
    const double a = p.speed_variation * rng.uniform();
    const double w = 2.0 * kPi * (1.0 + 2.0 * rng.uniform());
    const double c = 2.0 * kPi * rng.uniform();
    auto phi = [&](double u) { return u + a * (std::sin(w * u + c) - std::sin(c)) / w; };
    const double norm = phi(1.0);

    Trace trace{PointCloud(2)};
    trace.samples.reserve(p.samples);
    for (std::size_t i = 0; i < p.samples; ++i) {
      const double u = static_cast<double>(i) / static_cast<double>(p.samples - 1);
      auto q = point_on(route, total * phi(u) / norm);
      q[0] += p.noise * rng.normal();
      q[1] += p.noise * rng.normal();
      trace.samples.push_back(q);
    }
    traces.push_back(std::move(trace));
  }
  return traces;
}

}  // namespace metrecon
