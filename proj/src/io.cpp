#include "metrecon/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "metrecon/errors.hpp"

namespace metrecon {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "cannot parse number '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) throw ParseError(line, "non-finite value '" + std::string(field) + "'");
  return value;
}

std::size_t parse_index(std::string_view field, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "cannot parse vertex id '" + std::string(field) + "'");
  }
  return value;
}

std::vector<double> parse_csv_row(std::string_view row, std::size_t line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = row.find(',', start);
    out.push_back(parse_double(row.substr(start, comma - start), line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void append_row(PointCloud& cloud, const std::vector<double>& row, std::size_t line) {
  if (cloud.dim() != 0 && row.size() != cloud.dim()) {
    throw DimensionError("line " + std::to_string(line) + ": expected " +
                         std::to_string(cloud.dim()) + " coordinates, found " +
                         std::to_string(row.size()));
  }
  cloud.push_back(row);
}

void set_precision(std::ostream& out) { out << std::setprecision(17); }

}  // namespace

InputFormat parse_format(std::string_view name) {
  if (name == "csv") return InputFormat::kCsv;
  if (name == "edge_list") return InputFormat::kEdgeList;
  if (name == "traces") return InputFormat::kTraces;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

PointCloud read_points_csv(std::istream& in) {
  PointCloud cloud;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    const auto row = trim(text);
    if (row.empty()) continue;
    append_row(cloud, parse_csv_row(row, line), line);
  }
  return cloud;
}

NeighborGraph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    std::istringstream fields(text);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(f);
    if (parts.empty()) continue;
    if (parts.size() != 3) {
      throw ParseError(line, "expected 'u v length', found " + std::to_string(parts.size()) +
                                 " fields");
    }
    const auto u = parse_index(parts[0], line);
    const auto v = parse_index(parts[1], line);
    const double length = parse_double(parts[2], line);
    if (u == v) throw ParseError(line, "self-loop at vertex " + std::to_string(u));
    if (!(length > 0.0)) throw ParseError(line, "edge length must be positive");
    edges.push_back({u, v, length});
    n = std::max({n, u + 1, v + 1});
  }
  try {
    return NeighborGraph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw Error(e.what());
  }
}

std::vector<Trace> read_traces(std::istream& in) {
  std::vector<Trace> traces;
  std::size_t dim = 0;
  bool open = false;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    const auto row = trim(text);
    if (row.empty()) {
      open = false;
      continue;
    }
    if (!open) {
      traces.push_back({PointCloud(dim)});
      open = true;
    }
    append_row(traces.back().samples, parse_csv_row(row, line), line);
    dim = traces.back().samples.dim();
  }
  return traces;
}

LoadedData load_points(std::istream& in, InputFormat format) {
  switch (format) {
    case InputFormat::kCsv:
      return read_points_csv(in);
    case InputFormat::kEdgeList:
      return read_edge_list(in);
    case InputFormat::kTraces:
      return read_traces(in);
  }
  throw std::invalid_argument("unknown format");
}

LoadedData load_file(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return load_points(in, format);
}

void write_points_csv(std::ostream& out, const PointCloud& cloud) {
  set_precision(out);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud[i];
    for (std::size_t c = 0; c < p.size(); ++c) out << (c ? "," : "") << p[c];
    out << '\n';
  }
}

void write_edge_list(std::ostream& out, const NeighborGraph& graph) {
  set_precision(out);
  for (const auto& e : graph.edges()) out << e.u << ' ' << e.v << ' ' << e.length << '\n';
}

void write_traces(std::ostream& out, std::span<const Trace> traces) {
  for (std::size_t t = 0; t < traces.size(); ++t) {
    if (t) out << '\n';
    write_points_csv(out, traces[t].samples);
  }
}

std::string metric_graph_to_json(const MetricGraph& g) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (NodeId i = 0; i < g.node_count(); ++i) j["nodes"].push_back({{"id", i}, {"height", g.heights[i]}});
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges) j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"length", e.length}});
  j["root"] = g.root;
  j["beta1"] = betti1(g);
  return j.dump(2);
}

MetricGraph metric_graph_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("invalid graph JSON: ") + e.what());
  }
  try {
    MetricGraph g;
    const auto& nodes = j.at("nodes");
    g.heights.assign(nodes.size(), 0.0);
    std::vector<char> seen(nodes.size(), 0);
    for (const auto& node : nodes) {
      const auto id = node.at("id").get<std::size_t>();
      if (id >= nodes.size() || seen[id]) throw Error("graph JSON node ids must be 0..n-1");
      seen[id] = 1;
      g.heights[id] = node.at("height").get<double>();
    }
    for (const auto& e : j.at("edges")) {
      g.edges.push_back({e.at("a").get<NodeId>(), e.at("b").get<NodeId>(), e.at("length").get<double>()});
      if (g.edges.back().a >= g.node_count() || g.edges.back().b >= g.node_count()) {
        throw Error("graph JSON edge references a missing node");
      }
    }
    g.root = j.at("root").get<NodeId>();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed graph JSON: ") + e.what());
  }
}

void write_dot(std::ostream& out, const MetricGraph& g) {
  out << "graph alpha_reeb {\n";
  out << std::fixed << std::setprecision(4);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    out << "  n" << i << " [label=\"" << g.heights[i] << "\"";
    if (i == g.root) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& e : g.edges) {
    out << "  n" << e.a << " -- n" << e.b << " [len=" << e.length << "];\n";
  }
  out << "}\n";
  out << std::defaultfloat;
}

void write_embedding_csv(std::ostream& out, const PointCloud& embedding) {
  set_precision(out);
  for (std::size_t i = 0; i < embedding.size(); ++i) {
    out << i;
    for (double c : embedding[i]) out << ',' << c;
    out << '\n';
  }
}

}  // namespace metrecon
