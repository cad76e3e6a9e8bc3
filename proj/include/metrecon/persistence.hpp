#pragma once

// Degree-1 persistent homology of Vietoris-Rips filtrations over Z/2, and the
// Betti-1 estimate rank(H1(Rips(a)) -> H1(Rips(3a))).

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "metrecon/geometry.hpp"
#include "metrecon/graph.hpp"

namespace metrecon {

/// Symmetric all-pairs distances, zero diagonal. Entries may be +inf.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  static DistanceMatrix from_points(const PointCloud& cloud);
  /// Shortest-path metric; pairs in different components are +inf apart.
  static DistanceMatrix from_graph(const NeighborGraph& graph);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value) {
    d_[i * n_ + j] = value;
    d_[j * n_ + i] = value;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

struct Simplex {
  std::array<std::uint32_t, 3> vertices{};  ///< ascending; first dim+1 used
  std::uint8_t dim = 0;
  double diameter = 0.0;
};

/// Sorted by (diameter, dimension, vertex tuple); faces precede cofaces.
struct FilteredComplex {
  std::size_t vertex_count = 0;
  std::vector<Simplex> simplices;

  std::size_t count(std::size_t dim) const;
};

inline constexpr std::size_t kDefaultMaxPoints = 400;

/// Vertices, edges and triangles of diameter <= max_scale. Refuses inputs
/// with more than `max_points` points (SizeGuardError).
FilteredComplex rips_two_skeleton(const DistanceMatrix& metric, double max_scale,
                                  std::size_t max_points = kDefaultMaxPoints);
FilteredComplex rips_two_skeleton(const PointCloud& cloud, double max_scale,
                                  std::size_t max_points = kDefaultMaxPoints);

struct PersistencePair {
  std::size_t dim = 1;
  double birth = 0.0;
  double death = 0.0;  ///< +inf for classes alive at the top of the filtration
};

/// Standard column reduction. Pairs with birth == death are omitted. Sorted
/// by (birth, death).
std::vector<PersistencePair> h1_persistence(const FilteredComplex& complex);

/// Number of H1 bars with birth <= alpha and death > 3 alpha.
std::size_t betti1_between_scales(const DistanceMatrix& metric, double alpha,
                                  std::size_t max_points = kDefaultMaxPoints);
/// Same with a general outer scale (>= alpha).
std::size_t betti1_between_scales(const DistanceMatrix& metric, double alpha, double outer,
                                  std::size_t max_points = kDefaultMaxPoints);

}  // namespace metrecon
