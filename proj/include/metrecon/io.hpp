#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "metrecon/geometry.hpp"
#include "metrecon/graph.hpp"

namespace metrecon {

enum class InputFormat { kCsv, kEdgeList, kTraces };

/// "csv", "edge_list" or "traces"; std::invalid_argument otherwise.
InputFormat parse_format(std::string_view name);

using LoadedData = std::variant<PointCloud, NeighborGraph, std::vector<Trace>>;

// Readers report malformed rows as ParseError (1-based line numbers) and
// rows of the wrong width as DimensionError. Blank lines are skipped in CSV
// and edge-list input; in trace files they separate traces.
PointCloud read_points_csv(std::istream& in);
/// Vertex count is one more than the largest id mentioned.
NeighborGraph read_edge_list(std::istream& in);
std::vector<Trace> read_traces(std::istream& in);

LoadedData load_points(std::istream& in, InputFormat format);
LoadedData load_file(const std::filesystem::path& path, InputFormat format);

void write_points_csv(std::ostream& out, const PointCloud& cloud);
void write_edge_list(std::ostream& out, const NeighborGraph& graph);
void write_traces(std::ostream& out, std::span<const Trace> traces);

/// {"nodes": [{"id", "height"}], "edges": [{"a", "b", "length"}], "root", "beta1"}
std::string metric_graph_to_json(const MetricGraph& g);
MetricGraph metric_graph_from_json(std::string_view text);

/// Undirected DOT; node labels are heights rounded to 4 decimals.
void write_dot(std::ostream& out, const MetricGraph& g);

/// `node_id,x1,...,xd`, one row per node.
void write_embedding_csv(std::ostream& out, const PointCloud& embedding);

}  // namespace metrecon
