#include <doctest.h>

#include <cmath>

#include "metrecon/graph.hpp"
#include "metrecon/rng.hpp"
#include "oracles.hpp"

using namespace metrecon;

TEST_CASE("neighbor graph validation") {
  CHECK_THROWS_AS(NeighborGraph(2, {{0, 2, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(NeighborGraph(2, {{1, 1, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(NeighborGraph(2, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(NeighborGraph(2, {{0, 1, INFINITY}}), std::invalid_argument);
  CHECK_THROWS_AS(NeighborGraph(2, {{0, 1, 1.0}, {1, 0, 2.0}}), std::invalid_argument);
  const NeighborGraph g(3, {{0, 1, 1.0}});
  CHECK(g.neighbors(2).empty());
  CHECK(g.neighbors(1).size() == 1);
}

TEST_CASE("sssp examples") {
  const NeighborGraph path(3, {{0, 1, 1.0}, {1, 2, 2.5}});
  const auto d = sssp(path, 0);
  CHECK(d.values[0] == 0.0);
  CHECK(d.values[1] == 1.0);
  CHECK(d.values[2] == 3.5);
  CHECK(d.max_value() == 3.5);

  const NeighborGraph tri(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const auto t = sssp(tri, 0);
  CHECK(t.values[1] == 1.0);
  CHECK(t.values[2] == 1.0);

  const NeighborGraph split(3, {{0, 1, 1.0}});
  const auto s = sssp(split, 0);
  CHECK_FALSE(s.reachable(2));
  CHECK_THROWS_AS(sssp(split, 3), std::invalid_argument);
}

TEST_CASE("sssp matches Bellman-Ford on random graphs") {
  Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = oracle::random_connected(200, 400, 0.1, 5.0, rng);
    const std::size_t root = rng.below(200);
    const auto d = sssp(g, root);
    const auto bf = oracle::bellman_ford(g, root);
    for (std::size_t v = 0; v < 200; ++v) CHECK(*d.values[v] == doctest::Approx(bf[v]).epsilon(1e-12));
    CHECK(d.values[root] == 0.0);
    for (const auto& e : g.edges()) CHECK(std::abs(*d.values[e.u] - *d.values[e.v]) <= e.length + 1e-12);
  }
}

TEST_CASE("connected components examples") {
  const auto path = oracle::path(3);
  const std::vector<VertexId> active{0, 2};
  const auto labels = connected_components(path, std::span<const VertexId>(active));
  CHECK(labels[0] == 0u);
  CHECK_FALSE(labels[1].has_value());
  CHECK(labels[2] == 1u);
  CHECK(component_count(labels) == 2);
  CHECK(component_count(connected_components(path)) == 1);
}

TEST_CASE("connected components match DFS and union-find") {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 1000;
    std::vector<Edge> edges;
    std::set<std::pair<std::size_t, std::size_t>> used;
    for (int k = 0; k < 700; ++k) {
      std::size_t u = rng.below(n), v = rng.below(n);
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (used.insert({u, v}).second) edges.push_back({u, v, 1.0});
    }
    const NeighborGraph g(n, edges);
    std::vector<VertexId> subset;
    std::vector<bool> active(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      if (rng.uniform() < 0.7) {
        subset.push_back(v);
        active[v] = true;
      }
    }
    const auto got = connected_components(g, std::span<const VertexId>(subset));
    const auto want = oracle::dfs_components(g, active);
    for (std::size_t v = 0; v < n; ++v) {
      if (want[v] < 0) {
        CHECK_FALSE(got[v].has_value());
      } else {
        CHECK(got[v] == static_cast<std::size_t>(want[v]));
      }
    }

    // Union-find over the full edge set gives the DFS partition.
    UnionFind uf(n);
    for (const auto& e : edges) uf.unite(e.u, e.v);
    const auto full = oracle::dfs_components(g, std::vector<bool>(n, true));
    for (int k = 0; k < 2000; ++k) {
      const std::size_t a = rng.below(n), b = rng.below(n);
      CHECK(uf.connected(a, b) == (full[a] == full[b]));
    }
    CHECK(uf.find(uf.find(5)) == uf.find(5));
  }
}

TEST_CASE("betti1") {
  CHECK(betti1(oracle::path(10)) == 0);
  CHECK(betti1(oracle::star(4, 3)) == 0);
  CHECK(betti1(NeighborGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})) == 1);
  // Theta: 2 poles joined by 3 subdivided arcs.
  const NeighborGraph theta(5, {{0, 2, 1}, {2, 1, 1}, {0, 3, 1}, {3, 1, 1}, {0, 4, 1}, {4, 1, 1}});
  CHECK(betti1(theta) == 2);

  // Additivity over disjoint unions.
  std::vector<Edge> both;
  for (const auto& e : theta.edges()) both.push_back(e);
  const auto c = oracle::cycle(6);
  for (const auto& e : c.edges()) both.push_back({e.u + 5, e.v + 5, e.length});
  CHECK(betti1(NeighborGraph(11, both)) == betti1(theta) + betti1(c));

  const MetricGraph parallel{{0.0, 1.0}, {{0, 1, 1.0}, {0, 1, 1.0}, {0, 1, 2.0}}, 0};
  CHECK(betti1(parallel) == 2);
  const MetricGraph loop{{0.0}, {{0, 0, 1.0}}, 0};
  CHECK(betti1(loop) == 1);
}

TEST_CASE("edge length census") {
  const NeighborGraph g(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}});
  CHECK(edge_length_census(g, 2) == 2);
  CHECK(edge_length_census(g, 0) == 0);
  CHECK(edge_length_census(g, 3) == 3);
  std::size_t prev = 0;
  for (double t = 0; t < 4; t += 0.25) {
    CHECK(edge_length_census(g, t) >= prev);
    prev = edge_length_census(g, t);
  }
  const MetricGraph m{{0, 1, 2}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 2}}, 0};
  CHECK(edge_length_census(m, 1) == 2);
}

TEST_CASE("metric graph distances") {
  const MetricGraph g{{0, 1, 2, 1.5}, {{0, 1, 1}, {1, 2, 1}, {0, 3, 1.5}, {3, 2, 0.25}}, 0};
  CHECK(metric_graph_distance(g, 0, 0) == 0.0);
  CHECK(*metric_graph_distance(g, 0, 2) == doctest::Approx(1.75));
  const MetricGraph split{{0, 1, 5}, {{0, 1, 1}}, 0};
  CHECK_FALSE(metric_graph_distance(split, 0, 2).has_value());
  CHECK_THROWS_AS(metric_graph_distance(split, 0, 3), std::invalid_argument);

  // Interior locations.
  const GraphLocation mid_a{0, 0.5};
  const GraphLocation mid_b{2, 1.0};
  CHECK(*location_distance(g, mid_a, mid_b) == doctest::Approx(1.5));
  CHECK(*location_distance(g, mid_a, GraphLocation{0, 0.9}) == doctest::Approx(0.4));
  CHECK(node_location(g, 3) == GraphLocation{2, 1.5});
  CHECK(nearest_node(g, GraphLocation{2, 1.0}) == 3);

  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = oracle::random_connected(60, 80, 0.1, 2.0, rng);
    MetricGraph m;
    m.heights.assign(60, 0.0);
    for (const auto& e : h.edges()) m.edges.push_back({e.u, e.v, e.length});
    const auto bf = oracle::bellman_ford(m, 7);
    for (NodeId v = 0; v < 60; ++v) CHECK(*metric_graph_distance(m, 7, v) == doctest::Approx(bf[v]));
  }
}
