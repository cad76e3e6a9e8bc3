#include "metrecon/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "metrecon/rng.hpp"

namespace metrecon {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Floyd's algorithm: `count` distinct values of [0, total), ascending.
std::vector<std::uint64_t> distinct_indices(std::uint64_t total, std::uint64_t count,
                                            std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  if (count >= total) {
    out.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) out[i] = i;
    return out;
  }
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(count * 2);
  for (std::uint64_t j = total - count; j < total; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  out.assign(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Pairs (i, j), i < j, of an m-element set are numbered row by row; row i
// starts at i(2m - i - 1)/2.
std::pair<std::uint64_t, std::uint64_t> unrank_pair(std::uint64_t idx, std::uint64_t m) {
  auto row_start = [m](std::uint64_t i) { return i * (2 * m - i - 1) / 2; };
  std::uint64_t lo = 0;
  std::uint64_t hi = m - 1;
  while (lo + 1 < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (row_start(mid) <= idx) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, lo + 1 + (idx - row_start(lo))};
}

std::vector<std::vector<VertexId>> group_by_label(std::span<const std::optional<std::size_t>> labels) {
  std::vector<std::vector<VertexId>> groups;
  for (VertexId v = 0; v < labels.size(); ++v) {
    if (!labels[v]) continue;
    if (*labels[v] >= groups.size()) groups.resize(*labels[v] + 1);
    groups[*labels[v]].push_back(v);
  }
  return groups;
}

}  // namespace

std::vector<VertexPair> sample_pairs(std::size_t n_vertices, std::size_t count, std::uint64_t seed) {
  const std::vector<std::optional<std::size_t>> labels(n_vertices, std::size_t{0});
  return sample_pairs(labels, count, seed);
}

std::vector<VertexPair> sample_pairs(std::span<const std::optional<std::size_t>> labels,
                                     std::size_t count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_pairs: count must be at least 1");
  const auto groups = group_by_label(labels);
  std::vector<std::uint64_t> offsets{0};
  for (const auto& g : groups) {
    const std::uint64_t m = g.size();
    offsets.push_back(offsets.back() + m * (m > 0 ? m - 1 : 0) / 2);
  }
  if (offsets.back() == 0) throw std::invalid_argument("sample_pairs: no pair of connected vertices");

  std::vector<VertexPair> out;
  for (std::uint64_t idx : distinct_indices(offsets.back(), count, seed)) {
    const auto c = static_cast<std::size_t>(
        std::upper_bound(offsets.begin(), offsets.end(), idx) - offsets.begin() - 1);
    const auto [i, j] = unrank_pair(idx - offsets[c], groups[c].size());
    out.emplace_back(groups[c][i], groups[c][j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> sample_points(std::span<const std::optional<std::size_t>> labels,
                                    std::size_t count, std::uint64_t seed) {
  std::vector<VertexId> labelled;
  for (VertexId v = 0; v < labels.size(); ++v) {
    if (labels[v]) labelled.push_back(v);
  }
  std::vector<VertexId> out;
  for (std::uint64_t idx : distinct_indices(labelled.size(), count, seed)) out.push_back(labelled[idx]);
  return out;
}

std::vector<VertexPair> pairs_among(std::span<const VertexId> points,
                                    std::span<const std::optional<std::size_t>> labels) {
  std::vector<VertexId> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<VertexPair> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const auto& a = labels[sorted[i]];
      if (a && a == labels[sorted[j]]) out.emplace_back(sorted[i], sorted[j]);
    }
  }
  return out;
}

DistortionReport distortion_report(const NeighborGraph& h, const MetricGraph& g,
                                   std::span<const GraphLocation> assignment,
                                   std::span<const VertexPair> pairs) {
  if (assignment.size() != h.vertex_count()) {
    throw std::invalid_argument("assignment size does not match the input graph");
  }
  std::map<VertexId, std::vector<VertexId>> by_source;
  for (auto [u, v] : pairs) {
    if (u >= h.vertex_count() || v >= h.vertex_count()) {
      throw std::invalid_argument("pair references a missing vertex");
    }
    if (u == v) continue;
    by_source[std::min(u, v)].push_back(std::max(u, v));
  }
  for (const auto& loc : assignment) {
    if (loc.edge >= g.edge_count()) throw std::invalid_argument("assignment references a missing edge");
  }

  DistortionReport report;
  for (auto& [u, targets] : by_source) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    auto t0 = Clock::now();
    const ScalarField dh = sssp(h, u);
    report.original_time_s += seconds_since(t0);

    t0 = Clock::now();
    const auto dg = metric_graph_sssp(g, assignment[u]);
    std::vector<std::optional<double>> approx;
    approx.reserve(targets.size());
    for (VertexId v : targets) approx.push_back(location_distance(g, dg, assignment[u], assignment[v]));
    report.approximate_time_s += seconds_since(t0);

    for (std::size_t i = 0; i < targets.size(); ++i) {
      const VertexId v = targets[i];
      if (!dh.values[v]) {
        throw std::invalid_argument("pair (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") spans two components");
      }
      if (!approx[i]) {
        throw std::invalid_argument("pair (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") is disconnected in the reconstructed graph");
      }
      if (*dh.values[v] > 0.0) report.pairs.push_back({u, v, *dh.values[v], *approx[i]});
    }
  }
  if (report.pairs.empty()) throw std::invalid_argument("distortion_report: no usable pairs");

  std::vector<double> rel;
  rel.reserve(report.pairs.size());
  double sum = 0.0;
  for (const auto& p : report.pairs) {
    rel.push_back(p.relative());
    sum += rel.back();
    report.max_absolute_gap = std::max(report.max_absolute_gap, std::abs(p.original - p.approximate));
  }
  std::sort(rel.begin(), rel.end());
  const std::size_t n = rel.size();
  report.pair_count = n;
  report.mean_relative_distortion = sum / static_cast<double>(n);
  report.median_relative_distortion = n % 2 ? rel[n / 2] : 0.5 * (rel[n / 2 - 1] + rel[n / 2]);
  report.max_relative_distortion = rel.back();
  return report;
}

double bound_reeb(const BoundInputs& in, BoundVariant variant) {
  const double b = static_cast<double>(in.beta1) + 1.0;
  const double value = b * (17.0 + 8.0 * static_cast<double>(in.n_e)) * in.eps;
  return variant == BoundVariant::kDoubled ? 2.0 * value : value;
}

double bound_alpha_reeb(const BoundInputs& in) {
  const double b = static_cast<double>(in.beta1) + 1.0;
  const double scale = in.alpha + 2.0 * in.eps;
  return b * (4.0 * (2.0 + static_cast<double>(in.n_e)) * scale + in.eps);
}

double band_diameter_bound(std::size_t n_e_4alpha, double alpha) {
  return 4.0 * (2.0 + static_cast<double>(n_e_4alpha)) * alpha;
}

std::string report_to_json(const DistortionReport& report, const TableSummary& summary) {
  nlohmann::json j;
  j["original_points"] = summary.original_points;
  j["original_edges"] = summary.original_edges;
  j["reeb_nodes"] = summary.reeb_nodes;
  j["reeb_edges"] = summary.reeb_edges;
  j["reconstruction_time_s"] = summary.reconstruction_time_s;
  j["original_time_s"] = report.original_time_s;
  j["approximate_time_s"] = report.approximate_time_s;
  j["pair_count"] = report.pair_count;
  j["mean_relative_distortion"] = report.mean_relative_distortion;
  j["median_relative_distortion"] = report.median_relative_distortion;
  j["max_relative_distortion"] = report.max_relative_distortion;
  j["max_absolute_gap"] = report.max_absolute_gap;
  auto& pairs = j["pairs"] = nlohmann::json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back({{"u", p.u}, {"v", p.v}, {"original", p.original}, {"approximate", p.approximate}});
  }
  return j.dump(2);
}

std::string report_to_table(const DistortionReport& report, const TableSummary& summary) {
  std::ostringstream out;
  auto row = [&](const char* name, const std::string& value) {
    out << std::left << std::setw(32) << name << std::right << std::setw(14) << value << '\n';
  };
  auto fixed = [](double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
  };
  const std::string rule(46, '-');
  out << rule << '\n';
  row("#Original points", std::to_string(summary.original_points));
  row("#Original edges", std::to_string(summary.original_edges));
  row("#Nodes in alpha-Reeb graph", std::to_string(summary.reeb_nodes));
  row("#Edges in alpha-Reeb graph", std::to_string(summary.reeb_edges));
  out << rule << '\n';
  row("Graph reconstruction time", fixed(summary.reconstruction_time_s, 4));
  row("Original Dist Comp Time", fixed(report.original_time_s, 4));
  row("Approx Dist Comp Time", fixed(report.approximate_time_s, 4));
  out << rule << '\n';
  row("Mean distortion", fixed(100.0 * report.mean_relative_distortion, 1) + "%");
  row("Median distortion", fixed(100.0 * report.median_relative_distortion, 1) + "%");
  out << rule << '\n';
  return out.str();
}

}  // namespace metrecon
