#include "metrecon/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>


namespace metrecon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::optional<double>> to_optional(const std::vector<double>& dist) {
  std::vector<std::optional<double>> out(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] < kInf) out[i] = dist[i];
  }
  return out;
}

struct MetricAdjacency {
  struct Arc {
    NodeId to;
    double length;
  };
  std::vector<std::size_t> offsets;
  std::vector<Arc> arcs;

  explicit MetricAdjacency(const MetricGraph& g) : offsets(g.node_count() + 1, 0) {
    for (const auto& e : g.edges) {
      ++offsets[e.a + 1];
      ++offsets[e.b + 1];
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    arcs.resize(offsets.back());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (const auto& e : g.edges) {
      arcs[fill[e.a]++] = {e.b, e.length};
      arcs[fill[e.b]++] = {e.a, e.length};
    }
  }
};

using HeapEntry = std::pair<double, std::size_t>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

void check_metric_graph(const MetricGraph& g) {
  for (const auto& e : g.edges) {
    if (e.a >= g.node_count() || e.b >= g.node_count()) {
      throw std::invalid_argument("metric graph edge references a missing node");
    }
  }
}

std::vector<double> metric_dijkstra(const MetricGraph& g,
                                    std::span<const std::pair<NodeId, double>> seeds) {
  check_metric_graph(g);
  MetricAdjacency adj(g);
  std::vector<double> dist(g.node_count(), kInf);
  MinHeap heap;
  for (auto [node, d] : seeds) {
    if (d < dist[node]) {
      dist[node] = d;
      heap.emplace(d, node);
    }
  }
  while (!heap.empty()) {
    auto [d, n] = heap.top();
    heap.pop();
    if (d > dist[n]) continue;
    for (std::size_t i = adj.offsets[n]; i < adj.offsets[n + 1]; ++i) {
      const auto& arc = adj.arcs[i];
      const double nd = d + arc.length;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        heap.emplace(nd, arc.to);
      }
    }
  }
  return dist;
}

}  // namespace

NeighborGraph::NeighborGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  std::vector<std::pair<VertexId, VertexId>> keys;
  keys.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") references a vertex >= " + std::to_string(vertex_count_));
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") has non-positive or non-finite length");
    }
    keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(keys.begin(), keys.end());
  if (auto dup = std::adjacent_find(keys.begin(), keys.end()); dup != keys.end()) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(dup->first) + ", " +
                                std::to_string(dup->second) + ")");
  }

  offsets_.assign(vertex_count_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.length};
    adjacency_[fill[e.v]++] = {e.u, e.length};
  }
}

NeighborGraph NeighborGraph::induced(std::span<const VertexId> vertices) const {
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> local(vertex_count_, kNone);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = i;
  std::vector<Edge> sub;
  for (const auto& e : edges_) {
    if (local[e.u] != kNone && local[e.v] != kNone) {
      sub.push_back({local[e.u], local[e.v], e.length});
    }
  }
  return NeighborGraph(vertices.size(), std::move(sub));
}

double ScalarField::max_value() const {
  double m = 0.0;
  for (const auto& v : values) {
    if (v) m = std::max(m, *v);
  }
  return m;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t UnionFind::find(std::size_t x) noexcept {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool UnionFind::unite(std::size_t a, std::size_t b) noexcept {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

ScalarField sssp(const NeighborGraph& graph, VertexId root) {
  if (root >= graph.vertex_count()) {
    throw std::invalid_argument("root " + std::to_string(root) + " is not a vertex");
  }
  std::vector<double> dist(graph.vertex_count(), kInf);
  MinHeap heap;
  dist[root] = 0.0;
  heap.emplace(0.0, root);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (const auto& nb : graph.neighbors(v)) {
      const double nd = d + nb.length;
      if (nd < dist[nb.vertex]) {
        dist[nb.vertex] = nd;
        heap.emplace(nd, nb.vertex);
      }
    }
  }
  return ScalarField{root, to_optional(dist)};
}

std::vector<std::optional<std::size_t>> connected_components(
    const NeighborGraph& graph, std::optional<std::span<const VertexId>> active) {
  const std::size_t n = graph.vertex_count();
  std::vector<char> is_active(n, active ? 0 : 1);
  if (active) {
    for (VertexId v : *active) {
      if (v >= n) throw std::invalid_argument("active vertex out of range");
      is_active[v] = 1;
    }
  }
  std::vector<std::optional<std::size_t>> labels(n);
  std::vector<VertexId> stack;
  std::size_t next = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (!is_active[s] || labels[s]) continue;
    labels[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const auto& nb : graph.neighbors(v)) {
        if (is_active[nb.vertex] && !labels[nb.vertex]) {
          labels[nb.vertex] = next;
          stack.push_back(nb.vertex);
        }
      }
    }
    ++next;
  }
  return labels;
}

std::size_t component_count(std::span<const std::optional<std::size_t>> labels) {
  std::size_t c = 0;
  for (const auto& l : labels) {
    if (l) c = std::max(c, *l + 1);
  }
  return c;
}

std::size_t betti1(const NeighborGraph& graph) {
  UnionFind uf(graph.vertex_count());
  std::size_t components = graph.vertex_count();
  for (const auto& e : graph.edges()) {
    if (uf.unite(e.u, e.v)) --components;
  }
  return graph.edge_count() + components - graph.vertex_count();
}

std::size_t betti1(const MetricGraph& graph) {
  check_metric_graph(graph);
  UnionFind uf(graph.node_count());
  std::size_t components = graph.node_count();
  for (const auto& e : graph.edges) {
    if (uf.unite(e.a, e.b)) --components;
  }
  return graph.edge_count() + components - graph.node_count();
}

std::size_t edge_length_census(const NeighborGraph& graph, double threshold) {
  return static_cast<std::size_t>(std::count_if(graph.edges().begin(), graph.edges().end(),
                                                [&](const Edge& e) { return e.length <= threshold; }));
}

std::size_t edge_length_census(const MetricGraph& graph, double threshold) {
  return static_cast<std::size_t>(
      std::count_if(graph.edges.begin(), graph.edges.end(),
                    [&](const MetricEdge& e) { return e.length <= threshold; }));
}

std::vector<std::optional<double>> metric_graph_sssp(const MetricGraph& g, NodeId source) {
  if (source >= g.node_count()) throw std::invalid_argument("source node out of range");
  const std::pair<NodeId, double> seed{source, 0.0};
  return to_optional(metric_dijkstra(g, std::span(&seed, 1)));
}

std::vector<std::optional<double>> metric_graph_sssp(const MetricGraph& g, GraphLocation source) {
  if (source.edge >= g.edge_count()) throw std::invalid_argument("location edge out of range");
  const auto& e = g.edges[source.edge];
  const std::pair<NodeId, double> seeds[2] = {{e.a, source.offset},
                                              {e.b, e.length - source.offset}};
  return to_optional(metric_dijkstra(g, seeds));
}

std::optional<double> metric_graph_distance(const MetricGraph& g, NodeId a, NodeId b) {
  if (b >= g.node_count()) throw std::invalid_argument("target node out of range");
  if (a == b) return 0.0;
  return metric_graph_sssp(g, a)[b];
}

std::optional<double> location_distance(const MetricGraph& g,
                                        std::span<const std::optional<double>> from_source,
                                        GraphLocation source, GraphLocation target) {
  const auto& e = g.edges[target.edge];
  std::optional<double> best;
  auto consider = [&](std::optional<double> d) {
    if (d && (!best || *d < *best)) best = d;
  };
  if (from_source[e.a]) consider(*from_source[e.a] + target.offset);
  if (from_source[e.b]) consider(*from_source[e.b] + (e.length - target.offset));
  if (source.edge == target.edge) consider(std::abs(source.offset - target.offset));
  return best;
}

std::optional<double> location_distance(const MetricGraph& g, GraphLocation a, GraphLocation b) {
  const auto dist = metric_graph_sssp(g, a);
  return location_distance(g, dist, a, b);
}

GraphLocation node_location(const MetricGraph& g, NodeId n) {
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    if (g.edges[i].a == n) return {i, 0.0};
    if (g.edges[i].b == n) return {i, g.edges[i].length};
  }
  throw std::invalid_argument("node " + std::to_string(n) + " has no incident edge");
}

NodeId nearest_node(const MetricGraph& g, GraphLocation loc) {
  const auto& e = g.edges[loc.edge];
  return loc.offset <= 0.5 * e.length ? e.a : e.b;
}

}  // namespace metrecon
