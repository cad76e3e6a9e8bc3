#include "metrecon/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "metrecon/errors.hpp"

namespace metrecon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.diameter != b.diameter) return a.diameter < b.diameter;
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.vertices < b.vertices;
}

// Symmetric difference of two sorted index lists.
void add_column(std::vector<std::size_t>& target, const std::vector<std::size_t>& source,
                std::vector<std::size_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

DistanceMatrix DistanceMatrix::from_points(const PointCloud& cloud) {
  DistanceMatrix m(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = i + 1; j < cloud.size(); ++j) m.set(i, j, euclidean_distance(cloud[i], cloud[j]));
  }
  return m;
}

DistanceMatrix DistanceMatrix::from_graph(const NeighborGraph& graph) {
  DistanceMatrix m(graph.vertex_count());
  for (VertexId s = 0; s < graph.vertex_count(); ++s) {
    const auto d = sssp(graph, s);
    for (VertexId t = s + 1; t < graph.vertex_count(); ++t) m.set(s, t, d.values[t].value_or(kInf));
  }
  return m;
}

std::size_t FilteredComplex::count(std::size_t dim) const {
  return static_cast<std::size_t>(std::count_if(
      simplices.begin(), simplices.end(), [dim](const Simplex& s) { return s.dim == dim; }));
}

FilteredComplex rips_two_skeleton(const DistanceMatrix& metric, double max_scale,
                                  std::size_t max_points) {
  if (!(max_scale > 0.0)) throw std::invalid_argument("max_scale must be positive");
  const std::size_t n = metric.size();
  if (n > max_points) {
    throw SizeGuardError("Rips complex on " + std::to_string(n) + " points exceeds the limit of " +
                         std::to_string(max_points) +
                         "; subsample first (for example with an epsilon-net)");
  }
  FilteredComplex fc;
  fc.vertex_count = n;
  for (std::uint32_t i = 0; i < n; ++i) fc.simplices.push_back({{i, 0, 0}, 0, 0.0});
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double dij = metric(i, j);
      if (!(dij <= max_scale)) continue;
      fc.simplices.push_back({{i, j, 0}, 1, dij});
      for (std::uint32_t k = j + 1; k < n; ++k) {
        const double diam = std::max({dij, metric(i, k), metric(j, k)});
        if (diam <= max_scale) fc.simplices.push_back({{i, j, k}, 2, diam});
      }
    }
  }
  std::sort(fc.simplices.begin(), fc.simplices.end(), filtration_less);
  return fc;
}

FilteredComplex rips_two_skeleton(const PointCloud& cloud, double max_scale, std::size_t max_points) {
  if (cloud.size() > max_points) {
    throw SizeGuardError("Rips complex on " + std::to_string(cloud.size()) +
                         " points exceeds the limit of " + std::to_string(max_points) +
                         "; subsample first (for example with an epsilon-net)");
  }
  return rips_two_skeleton(DistanceMatrix::from_points(cloud), max_scale, max_points);
}

std::vector<PersistencePair> h1_persistence(const FilteredComplex& complex) {
  const std::size_t n = complex.vertex_count;
  std::unordered_map<std::uint64_t, std::size_t> edge_index;
  std::vector<double> edge_birth;
  std::vector<char> positive;
  UnionFind components(n);

  auto key = [n](std::uint32_t a, std::uint32_t b) { return std::uint64_t{a} * n + b; };

  std::vector<std::size_t> pivot_owner;
  std::vector<std::vector<std::size_t>> reduced;
  std::vector<std::size_t> scratch;
  std::vector<PersistencePair> pairs;
  std::vector<char> killed;

  for (const auto& s : complex.simplices) {
    if (s.dim == 1) {
      const auto [a, b, unused] = s.vertices;
      (void)unused;
      edge_index.emplace(key(a, b), edge_birth.size());
      edge_birth.push_back(s.diameter);
      // An edge joining two components is paired in degree 0; the rest
      // create a cycle.
      positive.push_back(components.unite(a, b) ? 0 : 1);
      pivot_owner.push_back(kNone);
      killed.push_back(0);
    } else if (s.dim == 2) {
      const auto [a, b, c] = s.vertices;
      std::vector<std::size_t> column;
      for (auto k : {key(a, b), key(a, c), key(b, c)}) {
        const auto it = edge_index.find(k);
        if (it == edge_index.end()) throw std::invalid_argument("triangle precedes one of its edges");
        column.push_back(it->second);
      }
      std::sort(column.begin(), column.end());
      while (!column.empty() && pivot_owner[column.back()] != kNone) {
        add_column(column, reduced[pivot_owner[column.back()]], scratch);
      }
      if (column.empty()) continue;
      const std::size_t low = column.back();
      pivot_owner[low] = reduced.size();
      reduced.push_back(std::move(column));
      killed[low] = 1;
      if (s.diameter > edge_birth[low]) pairs.push_back({1, edge_birth[low], s.diameter});
    }
  }
  for (std::size_t e = 0; e < edge_birth.size(); ++e) {
    if (positive[e] && !killed[e]) pairs.push_back({1, edge_birth[e], kInf});
  }
  std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& x, const PersistencePair& y) {
    return x.birth != y.birth ? x.birth < y.birth : x.death < y.death;
  });
  return pairs;
}

std::size_t betti1_between_scales(const DistanceMatrix& metric, double alpha, std::size_t max_points) {
  return betti1_between_scales(metric, alpha, 3.0 * alpha, max_points);
}

std::size_t betti1_between_scales(const DistanceMatrix& metric, double alpha, double outer,
                                  std::size_t max_points) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(outer >= alpha)) throw std::invalid_argument("outer scale must be at least alpha");
  const auto complex = rips_two_skeleton(metric, outer, max_points);
  const auto bars = h1_persistence(complex);
  return static_cast<std::size_t>(std::count_if(bars.begin(), bars.end(), [&](const PersistencePair& p) {
    return p.birth <= alpha && p.death > outer;
  }));
}

}  // namespace metrecon
