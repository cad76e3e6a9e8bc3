#include "metrecon/alpha_reeb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "metrecon/errors.hpp"

namespace metrecon {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be positive and finite");
  }
}

}  // namespace

IntervalCover::IntervalCover(double alpha, std::size_t count) : alpha_(alpha) {
  require_alpha(alpha);
  if (count == 0) throw std::invalid_argument("a cover needs at least one interval");
  intervals_.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    intervals_.push_back({step_height(k), step_height(k + 2)});
  }
}

std::optional<std::pair<std::size_t, std::size_t>> IntervalCover::containing(double x) const {
  if (!(x >= 0.0) || !std::isfinite(x)) return std::nullopt;
  // x lies in [j h, (j+1) h) with h = alpha/2, hence in intervals j-1 and j.
  const double j_real = std::floor(x / (0.5 * alpha_));
  if (j_real > static_cast<double>(intervals_.size())) return std::nullopt;
  const auto j = static_cast<std::size_t>(j_real);
  const std::size_t first = j == 0 ? 0 : j - 1;
  const std::size_t last = std::min(j, intervals_.size() - 1);
  if (first > last) return std::nullopt;
  return std::pair{first, last};
}

IntervalCover build_cover(double d_max, double alpha) {
  require_alpha(alpha);
  if (!(d_max >= 0.0) || !std::isfinite(d_max)) {
    throw std::invalid_argument("d_max must be finite and non-negative");
  }
  // Keep interval k while its low end k*alpha/2 is below d_max.
  std::size_t count = 1;
  if (d_max > 0.0) count = static_cast<std::size_t>(std::ceil(d_max / (0.5 * alpha)));
  return IntervalCover(alpha, std::max<std::size_t>(count, 1));
}

ClusterGraph mapper_nerve(const NeighborGraph& graph, const ScalarField& d,
                          const IntervalCover& cover) {
  const std::size_t n = graph.vertex_count();
  if (d.size() != n) throw std::invalid_argument("scalar field does not match the graph");

  // Vertex v owns slots 2v (its lowest interval) and 2v+1 (the next one).
  std::vector<std::size_t> first(n, kNone);
  std::vector<std::uint8_t> span(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (!d.values[v]) continue;
    const auto range = cover.containing(*d.values[v]);
    if (!range) {
      throw ConstructionError("vertex " + std::to_string(v) + " with d = " +
                              std::to_string(*d.values[v]) + " is not covered");
    }
    first[v] = range->first;
    span[v] = static_cast<std::uint8_t>(range->second - range->first + 1);
  }

  UnionFind uf(2 * n);
  for (const auto& e : graph.edges()) {
    if (first[e.u] == kNone || first[e.v] == kNone) continue;
    const std::size_t lo = std::max(first[e.u], first[e.v]);
    const std::size_t hi = std::min(first[e.u] + span[e.u], first[e.v] + span[e.v]);
    for (std::size_t k = lo; k < hi; ++k) {
      uf.unite(2 * e.u + (k - first[e.u]), 2 * e.v + (k - first[e.v]));
    }
  }

  // Discover clusters in ascending vertex order, so each cluster is first
  // seen at its smallest member.
  std::vector<std::size_t> slot_cluster(2 * n, kNone);
  std::vector<std::size_t> cluster_interval;
  std::vector<VertexId> cluster_first;
  std::vector<std::size_t> cluster_size;
  for (VertexId v = 0; v < n; ++v) {
    for (std::size_t s = 0; s < span[v]; ++s) {
      const std::size_t root = uf.find(2 * v + s);
      if (slot_cluster[root] == kNone) {
        slot_cluster[root] = cluster_interval.size();
        cluster_interval.push_back(first[v] + s);
        cluster_first.push_back(v);
        cluster_size.push_back(0);
      }
      ++cluster_size[slot_cluster[root]];
    }
  }

  const std::size_t c = cluster_interval.size();
  std::vector<std::size_t> order(c);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cluster_interval[a] != cluster_interval[b]) return cluster_interval[a] < cluster_interval[b];
    return cluster_first[a] < cluster_first[b];
  });
  std::vector<std::size_t> rank(c);
  for (std::size_t i = 0; i < c; ++i) rank[order[i]] = i;

  ClusterGraph nerve;
  nerve.nodes.resize(c);
  for (std::size_t i = 0; i < c; ++i) {
    auto& node = nerve.nodes[i];
    node.interval = cluster_interval[order[i]];
    node.label = (i > 0 && nerve.nodes[i - 1].interval == node.interval)
                     ? nerve.nodes[i - 1].label + 1
                     : 0;
    node.members.reserve(cluster_size[order[i]]);
  }

  auto cluster_of = [&](VertexId v, std::size_t s) { return rank[slot_cluster[uf.find(2 * v + s)]]; };

  nerve.vertex_cluster.assign(n, std::nullopt);
  for (VertexId v = 0; v < n; ++v) {
    if (span[v] == 0) continue;
    const std::size_t lower = cluster_of(v, 0);
    nerve.nodes[lower].members.push_back(v);
    nerve.vertex_cluster[v] = lower;
    if (span[v] == 2) {
      const std::size_t upper = cluster_of(v, 1);
      nerve.nodes[upper].members.push_back(v);
      nerve.edges.emplace_back(lower, upper);
    }
  }
  std::sort(nerve.edges.begin(), nerve.edges.end());
  nerve.edges.erase(std::unique(nerve.edges.begin(), nerve.edges.end()), nerve.edges.end());

  std::vector<VertexId> by_value;
  for (auto& node : nerve.nodes) {
    by_value = node.members;
    std::sort(by_value.begin(), by_value.end(), [&](VertexId a, VertexId b) {
      const double da = *d.values[a];
      const double db = *d.values[b];
      return da != db ? da < db : a < b;
    });
    node.min_vertex = by_value.front();
    node.median_vertex = by_value[(by_value.size() - 1) / 2];
    node.max_vertex = by_value.back();
    node.min_value = *d.values[node.min_vertex];
    node.median_value = *d.values[node.median_vertex];
    node.max_value = *d.values[node.max_vertex];
  }
  return nerve;
}

GluedGraph glue_intervals(const ClusterGraph& nerve, const IntervalCover& cover) {
  const std::size_t c = nerve.nodes.size();
  std::vector<char> has_lower(c, 0);
  for (std::size_t i = 0; i < c; ++i) {
    if (nerve.nodes[i].interval >= cover.size()) {
      throw ConstructionError("cluster " + std::to_string(i) + " lies outside the cover");
    }
    if (nerve.nodes[i].interval == 0) has_lower[i] = 1;
  }

  UnionFind slots(3 * c);
  UnionFind halves(2 * c);
  for (const auto& [lower, upper] : nerve.edges) {
    if (lower >= c || upper >= c) throw ConstructionError("nerve edge references a missing cluster");
    const std::size_t kl = nerve.nodes[lower].interval;
    const std::size_t ku = nerve.nodes[upper].interval;
    if (kl == ku) {
      throw ConstructionError("nerve edge between clusters " + std::to_string(lower) + " and " +
                              std::to_string(upper) + " on the same interval");
    }
    if (ku != kl + 1) {
      throw ConstructionError("nerve edge between non-consecutive intervals " +
                              std::to_string(kl) + " and " + std::to_string(ku));
    }
    has_lower[upper] = 1;
    // Upper half of the lower copy == lower half of the upper copy.
    slots.unite(3 * lower + kMid, 3 * upper + kLow);
    slots.unite(3 * lower + kHigh, 3 * upper + kMid);
    halves.unite(2 * lower + kUpperHalf, 2 * upper + kLowerHalf);
  }

  GluedGraph out;
  out.cluster_nodes.assign(c, {});
  out.cluster_edges.assign(c, {});
  auto& g = out.graph;

  std::vector<std::size_t> slot_node(3 * c, kNone);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t s = has_lower[i] ? kLow : kMid; s <= kHigh; ++s) {
      const std::size_t root = slots.find(3 * i + s);
      if (slot_node[root] == kNone) {
        slot_node[root] = g.heights.size();
        g.heights.push_back(cover.step_height(nerve.nodes[i].interval + s));
      }
      out.cluster_nodes[i][s] = slot_node[root];
    }
  }

  std::vector<std::size_t> half_edge(2 * c, kNone);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t h = has_lower[i] ? kLowerHalf : kUpperHalf; h <= kUpperHalf; ++h) {
      const NodeId bottom = *out.cluster_nodes[i][h];
      const NodeId top = *out.cluster_nodes[i][h + 1];
      const std::size_t root = halves.find(2 * i + h);
      if (half_edge[root] == kNone) {
        const double length = g.heights[top] - g.heights[bottom];
        if (!(length > 0.0)) {
          throw ConstructionError("degenerate half-edge on cluster " + std::to_string(i));
        }
        half_edge[root] = g.edges.size();
        g.edges.push_back({bottom, top, length});
      } else {
        const auto& e = g.edges[half_edge[root]];
        if (e.a != bottom || e.b != top) {
          throw ConstructionError("identified half-edges disagree on their endpoints");
        }
      }
      out.cluster_edges[i][h] = half_edge[root];
    }
  }

  if (c > 0) g.root = *out.cluster_nodes[0][kLow];
  return out;
}

GraphLocation SimplifyResult::relocate(const MetricGraph& before, GraphLocation loc) const {
  const auto& p = edge_map.at(loc.edge);
  const double len = before.edges[loc.edge].length;
  return {p.edge, p.start + (p.forward ? loc.offset : len - loc.offset)};
}

SimplifyResult simplify(const MetricGraph& g, bool preserve_root) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<EdgeId>> incident(n);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edges[e].a >= n || g.edges[e].b >= n) {
      throw std::invalid_argument("metric graph edge references a missing node");
    }
    incident[g.edges[e].a].push_back(e);
    incident[g.edges[e].b].push_back(e);
  }
  auto other_end = [&](EdgeId e, NodeId from) {
    return g.edges[e].a == from ? g.edges[e].b : g.edges[e].a;
  };

  std::vector<char> keep(n, 1);
  for (NodeId v = 0; v < n; ++v) {
    if (incident[v].size() != 2) continue;
    if (preserve_root && v == g.root) continue;
    const EdgeId e0 = incident[v][0];
    const EdgeId e1 = incident[v][1];
    if (e0 == e1) continue;
    const double h = g.heights[v];
    const double h0 = g.heights[other_end(e0, v)];
    const double h1 = g.heights[other_end(e1, v)];
    if ((h0 < h && h < h1) || (h1 < h && h < h0)) keep[v] = 0;
  }

  SimplifyResult out;
  out.node_map.assign(n, std::nullopt);
  out.edge_map.assign(g.edge_count(), {});
  auto& sg = out.graph;
  for (NodeId v = 0; v < n; ++v) {
    if (keep[v]) {
      out.node_map[v] = sg.heights.size();
      sg.heights.push_back(g.heights[v]);
    }
  }

  std::vector<char> visited(g.edge_count(), 0);
  std::vector<std::size_t> chain_of(n, kNone);
  auto walk = [&](NodeId start, EdgeId e) {
    const EdgeId id = sg.edges.size();
    double acc = 0.0;
    NodeId cur = start;
    while (true) {
      visited[e] = 1;
      const auto& ed = g.edges[e];
      const bool forward = ed.a == cur;
      out.edge_map[e] = {id, acc, forward};
      acc += ed.length;
      const NodeId next = forward ? ed.b : ed.a;
      if (keep[next]) {
        sg.edges.push_back({*out.node_map[start], *out.node_map[next], acc});
        return;
      }
      chain_of[next] = id;
      e = incident[next][0] == e ? incident[next][1] : incident[next][0];
      cur = next;
    }
  };

  for (NodeId v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    for (EdgeId e : incident[v]) {
      if (!visited[e]) walk(v, e);
    }
  }
  // A cycle made only of monotone degree-2 nodes cannot occur for height
  // functions, but arbitrary inputs may contain one; anchor it at a node.
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (visited[e]) continue;
    const NodeId anchor = g.edges[e].a;
    keep[anchor] = 1;
    out.node_map[anchor] = sg.heights.size();
    sg.heights.push_back(g.heights[anchor]);
    walk(anchor, e);
  }

  if (n > 0) {
    if (out.node_map[g.root]) {
      sg.root = *out.node_map[g.root];
    } else {
      sg.root = sg.edges[chain_of[g.root]].a;
    }
  }
  return out;
}

AlphaReebResult alpha_reeb(const NeighborGraph& graph, VertexId root, double alpha,
                           const AlphaReebOptions& options) {
  require_alpha(alpha);
  if (graph.vertex_count() == 0) throw EmptyInputError("alpha_reeb: empty graph");

  AlphaReebResult out;
  out.distance = sssp(graph, root);
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (!out.distance.reachable(v)) {
      throw std::invalid_argument("alpha_reeb needs a connected graph; vertex " +
                                  std::to_string(v) + " is unreachable from the root");
    }
  }
  out.cover = build_cover(out.distance.max_value(), alpha);
  out.nerve = mapper_nerve(graph, out.distance, out.cover);
  GluedGraph glued = glue_intervals(out.nerve, out.cover);

  const std::size_t root_cluster = *out.nerve.vertex_cluster[root];
  glued.graph.root = *glued.cluster_nodes[root_cluster][kLow];

  out.assignment.resize(graph.vertex_count());
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    const std::size_t c = *out.nerve.vertex_cluster[v];
    const std::size_t k = out.nerve.nodes[c].interval;
    const double x = *out.distance.values[v];
    const auto& lower = glued.cluster_edges[c][kLowerHalf];
    const bool on_lower = lower && x < out.cover.step_height(k + 1);
    const EdgeId e = on_lower ? *lower : *glued.cluster_edges[c][kUpperHalf];
    const auto& edge = glued.graph.edges[e];
    const double offset = std::clamp(x - glued.graph.heights[edge.a], 0.0, edge.length);
    out.assignment[v] = {e, offset};
  }

  if (!options.simplify) {
    out.graph = std::move(glued.graph);
    out.cluster_nodes = std::move(glued.cluster_nodes);
    return out;
  }

  SimplifyResult simple = simplify(glued.graph, true);
  for (auto& loc : out.assignment) loc = simple.relocate(glued.graph, loc);
  out.cluster_nodes = std::move(glued.cluster_nodes);
  for (auto& slots : out.cluster_nodes) {
    for (auto& node : slots) {
      if (node) node = simple.node_map[*node];
    }
  }
  out.graph = std::move(simple.graph);
  return out;
}

PointCloud embed_graph(const AlphaReebResult& result, const PointCloud& cloud,
                       std::span<const VertexId> vertex_ids) {
  const std::size_t n = result.distance.size();
  if (!vertex_ids.empty() && vertex_ids.size() != n) {
    throw std::invalid_argument("vertex id map does not match the graph");
  }
  auto row = [&](VertexId v) {
    const VertexId r = vertex_ids.empty() ? v : vertex_ids[v];
    if (r >= cloud.size()) throw std::invalid_argument("point cloud does not match the graph");
    return r;
  };

  const std::size_t nodes = result.graph.node_count();
  std::vector<VertexId> rep(nodes, kNone);
  for (std::size_t c = 0; c < result.nerve.nodes.size(); ++c) {
    const auto& cluster = result.nerve.nodes[c];
    const VertexId by_slot[3] = {cluster.min_vertex, cluster.median_vertex, cluster.max_vertex};
    for (std::size_t s = kLow; s <= kHigh; ++s) {
      const auto& node = result.cluster_nodes[c][s];
      if (node && rep[*node] == kNone) rep[*node] = by_slot[s];
    }
  }

  PointCloud out(cloud.dim());
  out.reserve(nodes);
  for (NodeId i = 0; i < nodes; ++i) {
    if (rep[i] == kNone) throw ConstructionError("node " + std::to_string(i) + " has no cluster slot");
    out.push_back(cloud[row(rep[i])]);
  }
  return out;
}

std::vector<ComponentReconstruction> reconstruct_components(const NeighborGraph& graph,
                                                            double alpha,
                                                            const ReconstructOptions& options) {
  if (graph.vertex_count() == 0) throw EmptyInputError("reconstruct: empty graph");
  if (options.root && *options.root >= graph.vertex_count()) {
    throw std::invalid_argument("root " + std::to_string(*options.root) + " is not a vertex");
  }
  const auto labels = connected_components(graph);
  const std::size_t count = component_count(labels);
  std::vector<std::vector<VertexId>> members(count);
  for (VertexId v = 0; v < graph.vertex_count(); ++v) members[*labels[v]].push_back(v);

  std::vector<ComponentReconstruction> out;
  out.reserve(count);
  for (auto& vertices : members) {
    VertexId local_root = 0;
    if (options.root && *labels[*options.root] == *labels[vertices.front()]) {
      local_root = static_cast<VertexId>(
          std::lower_bound(vertices.begin(), vertices.end(), *options.root) - vertices.begin());
    }
    ComponentReconstruction comp;
    comp.root = vertices[local_root];
    const AlphaReebOptions reeb_options{options.simplify};
    if (count == 1) {
      comp.reeb = alpha_reeb(graph, local_root, alpha, reeb_options);
    } else {
      comp.reeb = alpha_reeb(graph.induced(vertices), local_root, alpha, reeb_options);
    }
    comp.vertices = std::move(vertices);
    out.push_back(std::move(comp));
  }
  return out;
}

MergedReconstruction merge_components(std::span<const ComponentReconstruction> components,
                                      std::size_t vertex_count) {
  MergedReconstruction out;
  out.assignment.assign(vertex_count, std::nullopt);
  for (const auto& comp : components) {
    const std::size_t node_base = out.graph.node_count();
    const std::size_t edge_base = out.graph.edge_count();
    out.node_offsets.push_back(node_base);
    out.edge_offsets.push_back(edge_base);
    const auto& g = comp.reeb.graph;
    out.graph.heights.insert(out.graph.heights.end(), g.heights.begin(), g.heights.end());
    for (const auto& e : g.edges) {
      out.graph.edges.push_back({e.a + node_base, e.b + node_base, e.length});
    }
    out.roots.push_back(g.root + node_base);
    for (std::size_t i = 0; i < comp.vertices.size(); ++i) {
      const auto loc = comp.reeb.assignment[i];
      if (comp.vertices[i] >= vertex_count) {
        throw std::invalid_argument("component vertex outside the input graph");
      }
      out.assignment[comp.vertices[i]] = GraphLocation{loc.edge + edge_base, loc.offset};
    }
  }
  if (!out.roots.empty()) out.graph.root = out.roots.front();
  return out;
}

}  // namespace metrecon
