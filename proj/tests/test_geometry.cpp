#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "metrecon/errors.hpp"
#include "metrecon/geometry.hpp"
#include "metrecon/rng.hpp"
#include "oracles.hpp"

using namespace metrecon;

namespace {

PointCloud cloud_of(std::initializer_list<std::initializer_list<double>> rows) {
  PointCloud c;
  for (auto r : rows) c.push_back(std::vector<double>(r));
  return c;
}

PointCloud unit_circle(std::size_t n) {
  PointCloud c(2);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    c.push_back(std::vector<double>{std::cos(t), std::sin(t)});
  }
  return c;
}

std::set<std::pair<std::size_t, std::size_t>> edge_set(const NeighborGraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (const auto& e : g.edges()) s.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  return s;
}

PointCloud random_cloud(std::size_t n, std::size_t dim, double extent, std::uint64_t seed) {
  Rng rng(seed);
  PointCloud c(dim);
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& x : p) x = rng.uniform(0.0, extent);
    c.push_back(p);
  }
  return c;
}

}  // namespace

TEST_CASE("point cloud rejects mixed dimensions and non-finite values") {
  PointCloud c;
  c.push_back(std::vector<double>{0.0, 1.0});
  CHECK(c.dim() == 2);
  CHECK_THROWS_AS(c.push_back(std::vector<double>{1.0}), DimensionError);
  CHECK_THROWS_AS(c.push_back(std::vector<double>{NAN, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PointCloud(2, {1.0, 2.0, 3.0}), DimensionError);
}

TEST_CASE("rips graph on three collinear points") {
  const auto c = cloud_of({{0, 0}, {1, 0}, {2, 0}});
  auto g = build_rips_graph(c, 1.5);
  CHECK(edge_set(g) == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
  for (const auto& e : g.edges()) CHECK(e.length == doctest::Approx(1.0));

  g = build_rips_graph(c, 2.5);
  CHECK(g.edge_count() == 3);
  double total = 0;
  for (const auto& e : g.edges()) total += e.length;
  CHECK(total == doctest::Approx(4.0));
}

TEST_CASE("rips threshold is closed") {
  const auto c = cloud_of({{0, 0}, {1, 0}});
  CHECK(build_rips_graph(c, 1.0).edge_count() == 1);
  CHECK(build_rips_graph(c, 0.999).edge_count() == 0);
}

TEST_CASE("rips graph skips coincident points") {
  const auto c = cloud_of({{0, 0}, {0, 0}, {0.5, 0}});
  const auto g = build_rips_graph(c, 1.0);
  CHECK(edge_set(g) == std::set<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 2}});
}

TEST_CASE("rips graph errors") {
  CHECK_THROWS_AS(build_rips_graph(PointCloud(2), 1.0), EmptyInputError);
  CHECK_THROWS_AS(build_rips_graph(cloud_of({{0, 0}}), 0.0), std::invalid_argument);
}

TEST_CASE("100 points on the unit circle at radius 0.3 are connected") {
  const auto g = build_rips_graph(unit_circle(100), 0.3);
  std::vector<bool> all(100, true);
  const auto labels = oracle::dfs_components(g, all);
  CHECK(*std::max_element(labels.begin(), labels.end()) == 0);
}

TEST_CASE("grid-accelerated rips matches brute force and is monotone") {
  for (std::size_t dim : {1u, 2u, 3u, 5u}) {
    const auto c = random_cloud(2600, dim, 10.0, 17 + dim);
    const double r = dim == 1 ? 0.01 : 0.6;
    const auto g = build_rips_graph(c, r);
    std::set<std::pair<std::size_t, std::size_t>> brute;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        const double d = euclidean_distance(c[i], c[j]);
        if (d > 0 && d <= r) brute.insert({i, j});
      }
    }
    CHECK(edge_set(g) == brute);
    const auto bigger = edge_set(build_rips_graph(c, 1.3 * r));
    CHECK(std::includes(bigger.begin(), bigger.end(), brute.begin(), brute.end()));
  }
}

TEST_CASE("rips graph is symmetric, loop-free and monotone in the radius") {
  const auto c = random_cloud(300, 2, 5.0, 3);
  std::set<std::pair<std::size_t, std::size_t>> prev;
  for (double r : {0.2, 0.4, 0.8, 1.6}) {
    const auto g = build_rips_graph(c, r);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      for (const auto& nb : g.neighbors(v)) {
        CHECK(nb.vertex != v);
        bool back = false;
        for (const auto& nb2 : g.neighbors(nb.vertex)) back |= nb2.vertex == v;
        CHECK(back);
      }
    }
    const auto cur = edge_set(g);
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    prev = cur;
  }
}

TEST_CASE("farthest point net examples") {
  const auto c = cloud_of({{0, 0}, {10, 0}, {0.1, 0}});
  CHECK(farthest_point_net(c, 1.0) == std::vector<std::size_t>{0, 1});
  CHECK(farthest_point_net(c, 100.0) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(farthest_point_net(PointCloud(2), 1.0), EmptyInputError);
  CHECK_THROWS_AS(farthest_point_net(c, 0.0), std::invalid_argument);
}

TEST_CASE("farthest point net covers and separates") {
  auto check_net = [](const PointCloud& c, double eps) {
    const auto net = farthest_point_net(c, eps);
    CHECK(net.front() == 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      double best = oracle::kInf;
      for (auto l : net) best = std::min(best, euclidean_distance(c[i], c[l]));
      CHECK(best <= eps);
    }
    for (std::size_t a = 0; a < net.size(); ++a) {
      for (std::size_t b = a + 1; b < net.size(); ++b) CHECK(euclidean_distance(c[net[a]], c[net[b]]) > eps);
    }
  };
  check_net(unit_circle(1000), 0.1);
  check_net(random_cloud(2000, 3, 4.0, 9), 0.5);
}

TEST_CASE("resample_trace examples") {
  Trace t{cloud_of({{0, 0}, {4, 0}})};
  auto r = resample_trace(t, 1.0);
  REQUIRE(r.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(r.samples[i][0] == doctest::Approx(static_cast<double>(i)));
    CHECK(r.samples[i][1] == doctest::Approx(0.0));
  }

  t = Trace{cloud_of({{0, 0}, {1, 0}, {1, 1}})};
  r = resample_trace(t, 0.5);
  REQUIRE(r.size() == 5);
  CHECK(r.samples[3][0] == doctest::Approx(1.0));
  CHECK(r.samples[3][1] == doctest::Approx(0.5));

  t = Trace{cloud_of({{0, 0}, {0.3, 0}})};
  r = resample_trace(t, 1.0);
  REQUIRE(r.size() == 1);
  CHECK(r.samples[0][0] == 0.0);

  CHECK_THROWS_AS(resample_trace(t, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(resample_trace(Trace{PointCloud(2)}, 1.0), EmptyInputError);
}

TEST_CASE("resampled random polylines have constant arc-length gaps") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    PointCloud poly(2);
    std::vector<double> p{0, 0};
    for (int i = 0; i < 30; ++i) {
      poly.push_back(p);
      p[0] += rng.uniform(0.05, 1);  // x-monotone, so no self-crossings
      p[1] += rng.uniform(-1, 1);
    }
    // Cumulative arc length of the input polyline.
    std::vector<double> cum{0.0};
    for (std::size_t i = 1; i < poly.size(); ++i) cum.push_back(cum.back() + euclidean_distance(poly[i - 1], poly[i]));
    auto arc_of = [&](std::span<const double> q) {
      double best = oracle::kInf, s = 0;
      for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const auto a = poly[i];
        const auto b = poly[i + 1];
        const double len = cum[i + 1] - cum[i];
        double t = ((q[0] - a[0]) * (b[0] - a[0]) + (q[1] - a[1]) * (b[1] - a[1])) / (len * len);
        t = std::clamp(t, 0.0, 1.0);
        const double dx = a[0] + t * (b[0] - a[0]) - q[0], dy = a[1] + t * (b[1] - a[1]) - q[1];
        const double dist = std::hypot(dx, dy);
        if (dist < best - 1e-12) {
          best = dist;
          s = cum[i] + t * len;
        }
      }
      CHECK(best < 1e-9);
      return s;
    };
    const double spacing = rng.uniform(0.05, 0.5);
    const auto r = resample_trace(Trace{poly}, spacing);
    CHECK(r.size() == static_cast<std::size_t>(std::floor(cum.back() / spacing)) + 1);
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(std::abs(arc_of(r.samples[i]) - spacing * static_cast<double>(i)) <= 1e-9 * std::max(1.0, cum.back()));
    }
  }
}

TEST_CASE("delay_embed shapes") {
  PointCloud s(2);
  for (int i = 0; i < 5; ++i) s.push_back(std::vector<double>{double(i), double(10 * i)});
  const auto e = delay_embed(Trace{s}, 2);
  CHECK(e.size() == 4);
  CHECK(e.dim() == 4);
  CHECK(std::vector<double>(e[1].begin(), e[1].end()) == std::vector<double>{1, 10, 2, 20});
  CHECK(delay_embed(Trace{s}, 1) == s);
  CHECK_THROWS_AS(delay_embed(Trace{s}, 6), EmptyInputError);
  CHECK_THROWS_AS(delay_embed(Trace{s}, 0), std::invalid_argument);

  PointCloud long_trace(2);
  for (int i = 0; i < 500; ++i) long_trace.push_back(std::vector<double>{double(i), 0});
  const auto stacked = delay_embed(Trace{long_trace}, 10);
  CHECK(stacked.size() == 491);
  CHECK(stacked.dim() == 20);
}

TEST_CASE("delay_embed preserves adjacency scale") {
  Rng rng(2);
  PointCloud s(2);
  std::vector<double> p{0, 0};
  for (int i = 0; i < 200; ++i) {
    p = {p[0] + rng.uniform(-0.3, 0.3), p[1] + rng.uniform(-0.3, 0.3)};
    s.push_back(p);
  }
  double max_gap = 0;
  for (std::size_t i = 1; i < s.size(); ++i) max_gap = std::max(max_gap, euclidean_distance(s[i - 1], s[i]));
  for (std::size_t k : {1u, 4u, 10u}) {
    const auto e = delay_embed(Trace{s}, k);
    for (std::size_t i = 1; i < e.size(); ++i) {
      CHECK(euclidean_distance(e[i - 1], e[i]) <= std::sqrt(double(k)) * max_gap + 1e-12);
    }
  }
}

TEST_CASE("density filter removes an outlier") {
  Rng rng(11);
  PointCloud c(2);
  for (int i = 0; i < 100; ++i) c.push_back(std::vector<double>{rng.uniform(0, 1), rng.uniform(0, 1)});
  c.push_back(std::vector<double>{50, 50});
  const auto kept = density_filter_indices(c, 5, 0.95);
  CHECK(std::find(kept.begin(), kept.end(), 100u) == kept.end());
  CHECK(density_filter(c, 5, 0.95).size() == kept.size());

  // Quantile semantics on a uniform cloud.
  const auto u = random_cloud(200, 2, 1.0, 4);
  CHECK(density_filter_indices(u, 3, 1.0 - 1.0 / 200.0).size() >= 199);
  CHECK(density_filter_indices(u, 3, 0.99).size() >= 198);
  CHECK(density_filter_indices(u, 3, 0.0).size() >= 1);

  CHECK_THROWS_AS(density_filter(u, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(density_filter(u, 200, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(density_filter(u, 3, 1.0), std::invalid_argument);
}
