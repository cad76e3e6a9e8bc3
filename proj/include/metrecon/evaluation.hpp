#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "metrecon/graph.hpp"

namespace metrecon {

using VertexPair = std::pair<VertexId, VertexId>;

/// `count` distinct pairs u < v drawn uniformly among all pairs of a
/// connected vertex set; every pair when count exceeds the total. Sorted.
std::vector<VertexPair> sample_pairs(std::size_t n_vertices, std::size_t count, std::uint64_t seed);
/// Same, restricted to pairs whose labels agree. Unlabelled vertices are
/// never drawn.
std::vector<VertexPair> sample_pairs(std::span<const std::optional<std::size_t>> labels,
                                     std::size_t count, std::uint64_t seed);

/// `count` distinct labelled vertices (all of them if fewer), ascending.
std::vector<VertexId> sample_points(std::span<const std::optional<std::size_t>> labels,
                                    std::size_t count, std::uint64_t seed);
/// Every same-label pair among `points`.
std::vector<VertexPair> pairs_among(std::span<const VertexId> points,
                                    std::span<const std::optional<std::size_t>> labels);

struct PairDistance {
  VertexId u = 0;
  VertexId v = 0;
  double original = 0.0;
  double approximate = 0.0;

  double relative() const { return std::abs(original - approximate) / original; }
};

struct DistortionReport {
  std::size_t pair_count = 0;
  double mean_relative_distortion = 0.0;
  double median_relative_distortion = 0.0;
  double max_relative_distortion = 0.0;
  double max_absolute_gap = 0.0;
  double original_time_s = 0.0;     ///< shortest paths on the input graph
  double approximate_time_s = 0.0;  ///< shortest paths on the reconstructed graph
  std::vector<PairDistance> pairs;  ///< sorted by (u, v)
};

/// Compares d_H(u, v) with d_G(pi(u), pi(v)) on every pair. Pairs with
/// u == v are skipped; the median of an even count is the mean of the two
/// middle values.
DistortionReport distortion_report(const NeighborGraph& h, const MetricGraph& g,
                                   std::span<const GraphLocation> assignment,
                                   std::span<const VertexPair> pairs);

struct BoundInputs {
  std::size_t beta1 = 0;
  std::size_t n_e = 0;  ///< N_E of the comparison graph at the relevant scale
  double alpha = 0.0;
  double eps = 0.0;
};

enum class BoundVariant {
  kStandard,  ///< (b+1)(17 + 8 N) eps
  kDoubled,   ///< twice the standard value
};

/// Gromov-Hausdorff bound for the Reeb graph.
double bound_reeb(const BoundInputs& in, BoundVariant variant = BoundVariant::kStandard);
/// (b+1)(4(2+N)(alpha+2 eps) + eps).
double bound_alpha_reeb(const BoundInputs& in);
/// 4(2+N) alpha.
double band_diameter_bound(std::size_t n_e_4alpha, double alpha);

/// Sizes and timings shown beside the distortion rows.
struct TableSummary {
  std::size_t original_points = 0;
  std::size_t original_edges = 0;
  std::size_t reeb_nodes = 0;
  std::size_t reeb_edges = 0;
  double reconstruction_time_s = 0.0;
};

std::string report_to_json(const DistortionReport& report, const TableSummary& summary);
/// Two aligned columns with the row names of the published statistics table.
std::string report_to_table(const DistortionReport& report, const TableSummary& summary);

}  // namespace metrecon
