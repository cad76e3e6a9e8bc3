#pragma once

// Alpha-Reeb graph of the distance-to-root function on a neighbour graph:
//
//   sssp -> build_cover -> mapper_nerve -> glue_intervals -> simplify
//
// Every interval of the cover has length alpha and consecutive intervals
// overlap by alpha/2. Each cluster (connected component of the subgraph
// induced by one interval) becomes a copy of its interval split at the
// midpoint; nerve edges identify the upper half of the lower cluster with the
// lower half of the upper cluster.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "metrecon/geometry.hpp"
#include "metrecon/graph.hpp"

namespace metrecon {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const noexcept { return 0.5 * (lo + hi); }
};

/// Interval k is [k*alpha/2, k*alpha/2 + alpha). Membership is half-open so
/// that every value lies in at most two consecutive intervals.
class IntervalCover {
 public:
  IntervalCover(double alpha, std::size_t count);

  double alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  const Interval& operator[](std::size_t k) const { return intervals_[k]; }
  std::span<const Interval> intervals() const noexcept { return intervals_; }

  /// Height of the j-th half-step, j * alpha/2. Every slot height in the
  /// glued graph goes through this so that identified slots agree exactly.
  double step_height(std::size_t j) const noexcept {
    return static_cast<double>(j) * (0.5 * alpha_);
  }

  /// Inclusive index range of the intervals containing x, or nullopt when x
  /// is outside the covered range.
  std::optional<std::pair<std::size_t, std::size_t>> containing(double x) const;

 private:
  double alpha_;
  std::vector<Interval> intervals_;
};

/// Smallest cover of [0, d_max] by the interleaved families
/// {[i a, (i+1) a]} and {[(i+.5) a, (i+1.5) a]}; intervals lying entirely
/// above d_max are dropped. d_max = 0 yields the single interval [0, alpha].
IntervalCover build_cover(double d_max, double alpha);

struct ClusterNode {
  std::size_t interval = 0;
  std::size_t label = 0;  ///< component index within its interval
  std::vector<VertexId> members;  ///< ascending
  VertexId min_vertex = 0;
  VertexId median_vertex = 0;
  VertexId max_vertex = 0;
  double min_value = 0.0;
  double median_value = 0.0;
  double max_value = 0.0;
};

/// 1-skeleton of the nerve of the cluster cover.
struct ClusterGraph {
  std::vector<ClusterNode> nodes;  ///< sorted by (interval, label)
  /// (lower, upper) cluster ids, sorted; upper.interval == lower.interval + 1.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  /// Cluster of each vertex on the lower of its intervals.
  std::vector<std::optional<std::size_t>> vertex_cluster;
};

ClusterGraph mapper_nerve(const NeighborGraph& graph, const ScalarField& d,
                          const IntervalCover& cover);

/// Slots of a cluster copy.
enum Slot : std::size_t { kLow = 0, kMid = 1, kHigh = 2 };
/// Halves of a cluster copy.
enum Half : std::size_t { kLowerHalf = 0, kUpperHalf = 1 };

struct GluedGraph {
  /// Edges are oriented upward: height(a) < height(b).
  MetricGraph graph;
  /// Node of each (cluster, slot); nullopt for a dropped low slot.
  std::vector<std::array<std::optional<NodeId>, 3>> cluster_nodes;
  /// Edge of each (cluster, half); nullopt for a dropped lower half.
  std::vector<std::array<std::optional<EdgeId>, 2>> cluster_edges;
};

/// Quotient of the interval copies. Identification runs through two
/// union-find structures, one over endpoint slots and one over half-edges, so
/// that half-edges which share endpoints without being identified stay
/// parallel edges. A cluster above the first interval with no lower nerve
/// neighbour holds no data in its lower half, and that half is omitted.
GluedGraph glue_intervals(const ClusterGraph& nerve, const IntervalCover& cover);

/// Bookkeeping from a simplification: where every old node and edge went.
struct SimplifyResult {
  struct EdgePlacement {
    EdgeId edge = 0;      ///< edge of the simplified graph
    double start = 0.0;   ///< offset of the old edge's traversal start
    bool forward = true;  ///< old a->b runs along the new edge's a->b
  };

  MetricGraph graph;
  std::vector<std::optional<NodeId>> node_map;  ///< nullopt: merged into an edge
  std::vector<EdgePlacement> edge_map;

  GraphLocation relocate(const MetricGraph& before, GraphLocation loc) const;
};

/// Merges every maximal chain of degree-2 nodes that are monotone in height
/// into one edge of the summed length. Local extrema of the height always
/// survive; so does the root when `preserve_root` is set.
SimplifyResult simplify(const MetricGraph& g, bool preserve_root = true);

struct AlphaReebOptions {
  bool simplify = true;
};

struct AlphaReebResult {
  ScalarField distance;
  IntervalCover cover{1.0, 1};
  ClusterGraph nerve;
  MetricGraph graph;
  /// Surviving node of each (cluster, slot), nullopt when dropped or merged.
  std::vector<std::array<std::optional<NodeId>, 3>> cluster_nodes;
  /// Image of every vertex: the point at height d(v) on the copy of its
  /// (lower) cluster.
  std::vector<GraphLocation> assignment;
};

/// Full pipeline on a connected graph.
AlphaReebResult alpha_reeb(const NeighborGraph& graph, VertexId root, double alpha,
                           const AlphaReebOptions& options = {});

/// Coordinates for every node: low slots sit on the member with the smallest
/// d, middle slots on the median member, high slots on the largest. A node
/// made of several slots uses the slot of its lowest cluster. When the graph
/// was built on a subset of the cloud, `vertex_ids` maps its vertices to
/// cloud rows.
PointCloud embed_graph(const AlphaReebResult& result, const PointCloud& cloud,
                       std::span<const VertexId> vertex_ids = {});

struct ComponentReconstruction {
  std::vector<VertexId> vertices;  ///< local index -> input vertex, ascending
  VertexId root = 0;               ///< input vertex id
  AlphaReebResult reeb;
};

struct ReconstructOptions {
  /// Root used in the component that contains it; other components are
  /// rooted at their smallest vertex id.
  std::optional<VertexId> root;
  bool simplify = true;
};

/// Runs alpha_reeb on every connected component of `graph`.
std::vector<ComponentReconstruction> reconstruct_components(const NeighborGraph& graph,
                                                            double alpha,
                                                            const ReconstructOptions& options = {});

/// Disjoint union of per-component graphs with assignment in input ids.
struct MergedReconstruction {
  MetricGraph graph;  ///< root is the first component's root
  std::vector<NodeId> roots;
  std::vector<std::size_t> node_offsets;
  std::vector<std::size_t> edge_offsets;
  std::vector<std::optional<GraphLocation>> assignment;  ///< by input vertex
};

MergedReconstruction merge_components(std::span<const ComponentReconstruction> components,
                                      std::size_t vertex_count);

}  // namespace metrecon
