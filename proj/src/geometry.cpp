#include "metrecon/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "metrecon/errors.hpp"

namespace metrecon {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0 && !coords_.empty()) throw DimensionError("zero-dimensional points with data");
  if (dim_ != 0 && coords_.size() % dim_ != 0) {
    throw DimensionError("coordinate count " + std::to_string(coords_.size()) +
                         " is not a multiple of dimension " + std::to_string(dim_));
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
  }
}

void PointCloud::push_back(std::span<const double> point) {
  if (dim_ == 0) dim_ = point.size();
  if (point.size() != dim_) {
    throw DimensionError("point of dimension " + std::to_string(point.size()) +
                         " added to a cloud of dimension " + std::to_string(dim_));
  }
  for (double c : point) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
  }
  coords_.insert(coords_.end(), point.begin(), point.end());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

namespace {

// Buckets points on a grid over their first few coordinates. Projected
// distance never exceeds the full distance, so neighbouring cells hold every
// candidate pair.
class GridIndex {
 public:
  static constexpr std::size_t kMaxAxes = 3;

  GridIndex(const PointCloud& cloud, double cell) : cloud_(cloud), cell_(cell) {
    axes_ = std::min(cloud.dim(), kMaxAxes);
    for (std::size_t i = 0; i < cloud.size(); ++i) buckets_[key(cell_of(i))].push_back(i);
  }

  template <typename Visit>
  void for_each_candidate(std::size_t i, Visit&& visit) const {
    const auto base = cell_of(i);
    std::array<std::int64_t, kMaxAxes> probe{};
    const int combos = axes_ == 1 ? 3 : axes_ == 2 ? 9 : 27;
    for (int c = 0; c < combos; ++c) {
      int rem = c;
      for (std::size_t a = 0; a < axes_; ++a) {
        probe[a] = base[a] + (rem % 3) - 1;
        rem /= 3;
      }
      auto it = buckets_.find(key(probe));
      if (it == buckets_.end()) continue;
      for (std::size_t j : it->second) visit(j);
    }
  }

 private:
  std::array<std::int64_t, kMaxAxes> cell_of(std::size_t i) const {
    std::array<std::int64_t, kMaxAxes> c{};
    const auto p = cloud_[i];
    for (std::size_t a = 0; a < axes_; ++a) c[a] = static_cast<std::int64_t>(std::floor(p[a] / cell_));
    return c;
  }

  std::uint64_t key(const std::array<std::int64_t, kMaxAxes>& c) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t a = 0; a < axes_; ++a) {
      h ^= static_cast<std::uint64_t>(c[a]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  const PointCloud& cloud_;
  double cell_;
  std::size_t axes_ = 0;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

void require_nonempty(const PointCloud& cloud, const char* what) {
  if (cloud.empty()) throw EmptyInputError(std::string(what) + ": empty point cloud");
}

}  // namespace

NeighborGraph build_rips_graph(const PointCloud& cloud, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("Rips radius must be positive and finite");
  }
  require_nonempty(cloud, "build_rips_graph");
  // Squared-distance prefilter with slack; the decision is made on the
  // distance itself so that it matches the stored edge length.
  const double r2 = radius * radius * (1.0 + 1e-12);
  std::vector<Edge> edges;
  auto try_pair = [&](std::size_t i, std::size_t j) {
    const double d2 = squared_distance(cloud[i], cloud[j]);
    if (d2 > 0.0 && d2 <= r2) {
      const double d = std::sqrt(d2);
      if (d > 0.0 && d <= radius) edges.push_back({i, j, d});
    }
  };

  const std::size_t n = cloud.size();
  if (n <= 2048) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) try_pair(i, j);
    }
  } else {
    GridIndex grid(cloud, radius);
    for (std::size_t i = 0; i < n; ++i) {
      grid.for_each_candidate(i, [&](std::size_t j) {
        if (j > i) try_pair(i, j);
      });
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
  }
  return NeighborGraph(n, std::move(edges));
}

std::vector<std::size_t> farthest_point_net(const PointCloud& cloud, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  require_nonempty(cloud, "farthest_point_net");
  const std::size_t n = cloud.size();
  std::vector<double> nearest(n);
  std::vector<std::size_t> landmarks{0};
  for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_distance(cloud[0], cloud[i]);
  const double eps2 = epsilon * epsilon;
  while (true) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (nearest[i] > nearest[far]) far = i;
    }
    if (nearest[far] <= eps2) break;
    landmarks.push_back(far);
    const auto p = cloud[far];
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(p, cloud[i]));
    }
  }
  return landmarks;
}

PointCloud select_points(const PointCloud& cloud, std::span<const std::size_t> indices) {
  PointCloud out(cloud.dim());
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= cloud.size()) throw std::out_of_range("point index out of range");
    out.push_back(cloud[i]);
  }
  return out;
}

Trace resample_trace(const Trace& trace, double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("resample spacing must be positive");
  const auto& s = trace.samples;
  if (s.empty()) throw EmptyInputError("resample_trace: empty trace");
  const std::size_t dim = s.dim();

  Trace out{PointCloud(dim)};
  out.samples.push_back(s[0]);

  double total = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) total += euclidean_distance(s[i - 1], s[i]);
  const double slack = 1e-12 * std::max(total, 1.0);

  // Walk the polyline once; seg_start is the arc length at sample `seg`.
  std::vector<double> point(dim);
  std::size_t seg = 0;
  double seg_start = 0.0;
  double seg_len = s.size() > 1 ? euclidean_distance(s[0], s[1]) : 0.0;
  for (std::size_t k = 1;; ++k) {
    const double target = static_cast<double>(k) * spacing;
    if (target > total + slack) break;
    while (seg + 2 < s.size() && seg_start + seg_len < target) {
      seg_start += seg_len;
      ++seg;
      seg_len = euclidean_distance(s[seg], s[seg + 1]);
    }
    const double t = seg_len > 0.0 ? std::clamp((target - seg_start) / seg_len, 0.0, 1.0) : 0.0;
    const auto a = s[seg];
    const auto b = s[seg + 1];
    for (std::size_t c = 0; c < dim; ++c) point[c] = a[c] + t * (b[c] - a[c]);
    out.samples.push_back(point);
  }
  return out;
}

PointCloud delay_embed(const Trace& trace, std::size_t k) {
  if (k == 0) throw std::invalid_argument("stack size must be at least 1");
  const auto& s = trace.samples;
  if (s.size() < k) {
    throw EmptyInputError("delay_embed: trace of " + std::to_string(s.size()) +
                          " samples is shorter than the stack size " + std::to_string(k));
  }
  const std::size_t dim = s.dim();
  const std::size_t count = s.size() - k + 1;
  std::vector<double> coords;
  coords.reserve(count * k * dim);
  for (std::size_t i = 0; i < count; ++i) {
    const auto first = s.coords().begin() + static_cast<std::ptrdiff_t>(i * dim);
    coords.insert(coords.end(), first, first + static_cast<std::ptrdiff_t>(k * dim));
  }
  return PointCloud(k * dim, std::move(coords));
}

std::vector<std::size_t> density_filter_indices(const PointCloud& cloud, std::size_t k,
                                                double quantile) {
  const std::size_t n = cloud.size();
  if (k < 1 || k >= n) throw std::invalid_argument("density filter needs 1 <= k < |cloud|");
  if (!(quantile >= 0.0 && quantile < 1.0)) {
    throw std::invalid_argument("density filter quantile must lie in [0, 1)");
  }
  std::vector<double> knn(n);
  std::vector<double> row(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) row[w++] = squared_distance(cloud[i], cloud[j]);
    }
    std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k - 1), row.end());
    knn[i] = row[k - 1];
  }
  std::vector<double> sorted = knn;
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(std::floor(quantile * static_cast<double>(n - 1)));
  const double threshold = sorted[rank];

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (knn[i] <= threshold) kept.push_back(i);
  }
  return kept;
}

PointCloud density_filter(const PointCloud& cloud, std::size_t k, double quantile) {
  const auto kept = density_filter_indices(cloud, k, quantile);
  return select_points(cloud, kept);
}

}  // namespace metrecon
