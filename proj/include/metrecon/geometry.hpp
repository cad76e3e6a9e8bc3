#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "metrecon/graph.hpp"

namespace metrecon {

/// Points of R^d stored row-major.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::size_t dim) : dim_(dim) {}
  /// Takes ownership of `coords` (size must be a multiple of `dim`).
  PointCloud(std::size_t dim, std::vector<double> coords);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> operator[](std::size_t i) { return {coords_.data() + i * dim_, dim_}; }

  /// Throws DimensionError on a mismatch and std::invalid_argument on
  /// non-finite coordinates.
  void push_back(std::span<const double> point);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Time-ordered positions of a single moving object.
struct Trace {
  PointCloud samples;

  std::size_t size() const noexcept { return samples.size(); }
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Rips graph: edge (u, v) iff 0 < |p_u - p_v| <= radius, length = distance.
/// Coincident points are never joined.
NeighborGraph build_rips_graph(const PointCloud& cloud, double radius);

/// Greedy farthest-point traversal from index 0. The result is an
/// epsilon-net: covering radius <= epsilon, pairwise separation > epsilon.
std::vector<std::size_t> farthest_point_net(const PointCloud& cloud, double epsilon);

PointCloud select_points(const PointCloud& cloud, std::span<const std::size_t> indices);

/// Points at arc-length multiples of `spacing` along the trace polyline,
/// starting at the first sample.
Trace resample_trace(const Trace& trace, double spacing);

/// Point i is the concatenation of samples i .. i+k-1 (dimension k*d).
PointCloud delay_embed(const Trace& trace, std::size_t k);

/// Drops points whose k-th nearest-neighbour distance exceeds the given
/// quantile of the k-NN distance distribution.
PointCloud density_filter(const PointCloud& cloud, std::size_t k, double quantile);
/// Indices (ascending) of the points density_filter keeps.
std::vector<std::size_t> density_filter_indices(const PointCloud& cloud, std::size_t k,
                                                double quantile);

}  // namespace metrecon
