#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace metrecon {

using VertexId = std::size_t;
using NodeId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double length = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted undirected simple graph with positive edge lengths. Immutable
/// once built; the constructor validates every edge.
class NeighborGraph {
 public:
  struct Neighbor {
    VertexId vertex;
    double length;
  };

  NeighborGraph() = default;
  NeighborGraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  /// Induced subgraph on `vertices` (renumbered in the given order).
  NeighborGraph induced(std::span<const VertexId> vertices) const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Graph distance to a root; vertices outside the root's component carry no
/// value.
struct ScalarField {
  VertexId root = 0;
  std::vector<std::optional<double>> values;

  std::size_t size() const noexcept { return values.size(); }
  bool reachable(VertexId v) const { return values[v].has_value(); }
  /// Largest finite value (0 for an empty field).
  double max_value() const;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);

  std::size_t find(std::size_t x) noexcept;
  /// Returns false when a and b were already joined.
  bool unite(std::size_t a, std::size_t b) noexcept;
  bool connected(std::size_t a, std::size_t b) noexcept { return find(a) == find(b); }
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

struct MetricEdge {
  NodeId a = 0;
  NodeId b = 0;
  double length = 0.0;

  friend bool operator==(const MetricEdge&, const MetricEdge&) = default;
};

/// Abstract metric graph. Node ids are indices into `heights`; parallel
/// edges are allowed (two distinct arcs between the same pair of nodes).
struct MetricGraph {
  std::vector<double> heights;
  std::vector<MetricEdge> edges;
  NodeId root = 0;

  std::size_t node_count() const noexcept { return heights.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }

  friend bool operator==(const MetricGraph&, const MetricGraph&) = default;
};

/// A point of a metric graph: `offset` along `edge`, measured from its `a` end.
struct GraphLocation {
  EdgeId edge = 0;
  double offset = 0.0;

  friend bool operator==(const GraphLocation&, const GraphLocation&) = default;
};

/// Binary-heap Dijkstra, O(|E| + |V| log |V|).
ScalarField sssp(const NeighborGraph& graph, VertexId root);

/// Labels 0..c-1 in order of the smallest vertex id of each component.
/// Inactive vertices get no label.
std::vector<std::optional<std::size_t>> connected_components(
    const NeighborGraph& graph, std::optional<std::span<const VertexId>> active = std::nullopt);

std::size_t component_count(std::span<const std::optional<std::size_t>> labels);

/// |E| - |V| + #components.
std::size_t betti1(const NeighborGraph& graph);
std::size_t betti1(const MetricGraph& graph);

/// Number of edges with length <= threshold.
std::size_t edge_length_census(const NeighborGraph& graph, double threshold);
std::size_t edge_length_census(const MetricGraph& graph, double threshold);

/// Shortest-path distances from a node (nullopt: unreachable).
std::vector<std::optional<double>> metric_graph_sssp(const MetricGraph& g, NodeId source);
/// Shortest-path distances from a point in the interior of an edge.
std::vector<std::optional<double>> metric_graph_sssp(const MetricGraph& g, GraphLocation source);

std::optional<double> metric_graph_distance(const MetricGraph& g, NodeId a, NodeId b);

/// Distance from `source` to `target`, given node distances computed by
/// metric_graph_sssp(g, source).
std::optional<double> location_distance(const MetricGraph& g,
                                        std::span<const std::optional<double>> from_source,
                                        GraphLocation source, GraphLocation target);
std::optional<double> location_distance(const MetricGraph& g, GraphLocation a, GraphLocation b);

GraphLocation node_location(const MetricGraph& g, NodeId n);
NodeId nearest_node(const MetricGraph& g, GraphLocation loc);

}  // namespace metrecon
