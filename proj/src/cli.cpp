#include "metrecon/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "metrecon/alpha_reeb.hpp"
#include "metrecon/errors.hpp"
#include "metrecon/evaluation.hpp"
#include "metrecon/geometry.hpp"
#include "metrecon/io.hpp"
#include "metrecon/persistence.hpp"
#include "metrecon/synth.hpp"

namespace metrecon {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

// Flag combinations CLI11 cannot express; reported with the usage exit code.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Input pipeline shared by reconstruct, eval and betti.

struct InputOptions {
  std::string path;
  std::string format = "csv";
  std::optional<double> radius;
  std::size_t stack = 1;
  std::optional<double> spacing;
  std::optional<double> net;
  std::optional<std::size_t> filter_k;
  double filter_quantile = 0.95;
};

struct Dataset {
  std::size_t raw_count = 0;        ///< points, vertices or trace samples read
  std::optional<PointCloud> cloud;  ///< absent for edge-list input
  NeighborGraph graph;
};

void add_input_options(CLI::App& app, InputOptions& in, bool needs_graph) {
  app.add_option("input", in.path, "Input file")->required()->check(CLI::ExistingFile);
  app.add_option("--format", in.format, "Input format")
      ->check(CLI::IsMember({"csv", "edge_list", "traces"}))
      ->capture_default_str();
  if (needs_graph) {
    app.add_option("--radius", in.radius, "Rips radius (point and trace input)")
        ->check(CLI::PositiveNumber);
  }
  app.add_option("--stack", in.stack, "Consecutive trace samples stacked into one point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--spacing", in.spacing, "Resample traces to this arc-length spacing first")
      ->check(CLI::PositiveNumber);
  app.add_option("--net", in.net, "Keep an epsilon-net of the points (farthest-point sampling)")
      ->check(CLI::PositiveNumber);
  app.add_option("--filter-k", in.filter_k, "Drop outliers by k-th nearest-neighbour distance")
      ->check(CLI::PositiveNumber);
  app.add_option("--filter-quantile", in.filter_quantile, "Quantile kept by --filter-k")
      ->check(CLI::Range(0.0, 0.999999999))
      ->capture_default_str();
}

PointCloud preprocess_points(PointCloud cloud, const InputOptions& in) {
  if (cloud.empty()) throw EmptyInputError("input contains no points");
  if (in.filter_k) cloud = density_filter(cloud, *in.filter_k, in.filter_quantile);
  if (in.net) cloud = select_points(cloud, farthest_point_net(cloud, *in.net));
  return cloud;
}

Dataset load_dataset(const InputOptions& in, bool build_graph) {
  const auto format = parse_format(in.format);
  auto data = load_file(in.path, format);
  Dataset ds;
  if (auto* graph = std::get_if<NeighborGraph>(&data)) {
    if (graph->vertex_count() == 0) throw EmptyInputError("edge list is empty");
    ds.raw_count = graph->vertex_count();
    ds.graph = std::move(*graph);
    return ds;
  }
  PointCloud cloud;
  if (auto* points = std::get_if<PointCloud>(&data)) {
    ds.raw_count = points->size();
    cloud = std::move(*points);
  } else {
    auto& traces = std::get<std::vector<Trace>>(data);
    for (auto& trace : traces) {
      ds.raw_count += trace.size();
      const Trace prepared = in.spacing ? resample_trace(trace, *in.spacing) : std::move(trace);
      if (prepared.size() < in.stack) continue;
      const PointCloud stacked = delay_embed(prepared, in.stack);
      if (cloud.dim() == 0) cloud = PointCloud(stacked.dim());
      cloud.reserve(cloud.size() + stacked.size());
      for (std::size_t i = 0; i < stacked.size(); ++i) cloud.push_back(stacked[i]);
    }
  }
  ds.cloud = preprocess_points(std::move(cloud), in);
  if (build_graph) {
    if (!in.radius) throw UsageError("--radius is required for point and trace input");
    ds.graph = build_rips_graph(*ds.cloud, *in.radius);
  }
  return ds;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

// ---------------------------------------------------------------------------
// Reconstruction files.

json components_to_json(std::span<const ComponentReconstruction> comps, const MergedReconstruction& merged,
                        double alpha) {
  json j;
  j["alpha"] = alpha;
  j["components"] = json::array();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& comp = comps[c];
    const auto& g = comp.reeb.graph;
    const std::size_t nb = merged.node_offsets[c];
    const std::size_t eb = merged.edge_offsets[c];
    json jc;
    jc["nodes"] = json::array();
    for (NodeId i = 0; i < g.node_count(); ++i) jc["nodes"].push_back({{"id", i + nb}, {"height", g.heights[i]}});
    jc["edges"] = json::array();
    for (const auto& e : g.edges) jc["edges"].push_back({{"a", e.a + nb}, {"b", e.b + nb}, {"length", e.length}});
    jc["root"] = g.root + nb;
    jc["root_vertex"] = comp.root;
    jc["beta1"] = betti1(g);
    jc["vertices"] = comp.vertices;
    jc["assignment"] = json::array();
    for (std::size_t i = 0; i < comp.vertices.size(); ++i) {
      const auto loc = comp.reeb.assignment[i];
      jc["assignment"].push_back({{"vertex", comp.vertices[i]},
                                  {"node", nearest_node(g, loc) + nb},
                                  {"edge", loc.edge + eb},
                                  {"offset", loc.offset}});
    }
    j["components"].push_back(std::move(jc));
  }
  return j;
}

struct LoadedReconstruction {
  MetricGraph graph;
  std::vector<GraphLocation> assignment;
};

LoadedReconstruction reconstruction_from_json(const fs::path& path, std::size_t vertex_count) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  LoadedReconstruction out;
  std::vector<char> seen(vertex_count, 0);
  out.assignment.resize(vertex_count);
  try {
    const json j = json::parse(in);
    for (const auto& jc : j.at("components")) {
      for (const auto& node : jc.at("nodes")) {
        const auto id = node.at("id").get<std::size_t>();
        if (id != out.graph.node_count()) throw Error("graph file node ids are not consecutive");
        out.graph.heights.push_back(node.at("height").get<double>());
      }
      for (const auto& e : jc.at("edges")) {
        out.graph.edges.push_back({e.at("a").get<NodeId>(), e.at("b").get<NodeId>(), e.at("length").get<double>()});
      }
      for (const auto& a : jc.at("assignment")) {
        const auto v = a.at("vertex").get<std::size_t>();
        const auto edge = a.at("edge").get<std::size_t>();
        if (v >= vertex_count || seen[v]) {
          throw Error("assignment in " + path.string() + " does not match the input graph");
        }
        seen[v] = 1;
        out.assignment[v] = {edge, a.at("offset").get<double>()};
      }
    }
  } catch (const json::exception& e) {
    throw Error("malformed reconstruction file " + path.string() + ": " + e.what());
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error("assignment in " + path.string() + " does not cover every input vertex");
  }
  for (const auto& e : out.graph.edges) {
    if (e.a >= out.graph.node_count() || e.b >= out.graph.node_count()) {
      throw Error("graph file edge references a missing node");
    }
  }
  for (const auto& loc : out.assignment) {
    if (loc.edge >= out.graph.edge_count()) throw Error("assignment references a missing edge");
  }
  return out;
}

struct Reconstruction {
  std::vector<ComponentReconstruction> components;
  MergedReconstruction merged;
  double seconds = 0.0;
};

Reconstruction reconstruct(const NeighborGraph& graph, double alpha, std::optional<VertexId> root,
                           bool simplify) {
  Reconstruction r;
  const auto t0 = Clock::now();
  r.components = reconstruct_components(graph, alpha, {root, simplify});
  r.seconds = seconds_since(t0);
  r.merged = merge_components(r.components, graph.vertex_count());
  return r;
}

std::vector<GraphLocation> flat_assignment(const MergedReconstruction& merged) {
  std::vector<GraphLocation> out;
  out.reserve(merged.assignment.size());
  for (const auto& loc : merged.assignment) out.push_back(*loc);
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands.

struct ReconstructConfig {
  InputOptions input;
  double alpha = 0.0;
  std::optional<VertexId> root;
  bool no_simplify = false;
  std::string out_dir = ".";
};

int run_reconstruct(const ReconstructConfig& cfg, std::ostream& out) {
  const Dataset ds = load_dataset(cfg.input, true);
  const auto r = reconstruct(ds.graph, cfg.alpha, cfg.root, !cfg.no_simplify);

  const fs::path dir = cfg.out_dir;
  ensure_dir(dir);
  open_out(dir / "graph.json") << components_to_json(r.components, r.merged, cfg.alpha).dump(2) << '\n';
  {
    auto dot = open_out(dir / "graph.dot");
    write_dot(dot, r.merged.graph);
  }
  if (ds.cloud) {
    PointCloud embedding(ds.cloud->dim());
    for (const auto& comp : r.components) {
      const PointCloud part = embed_graph(comp.reeb, *ds.cloud, comp.vertices);
      for (std::size_t i = 0; i < part.size(); ++i) embedding.push_back(part[i]);
    }
    auto csv = open_out(dir / "embedding.csv");
    write_embedding_csv(csv, embedding);
  }

  std::ostringstream summary;
  auto row = [&](const char* name, const auto& value) {
    summary << std::left << std::setw(28) << name << value << '\n';
  };
  row("input records", ds.raw_count);
  row("#Original points", ds.graph.vertex_count());
  row("#Original edges", ds.graph.edge_count());
  row("components", r.components.size());
  row("#Nodes in alpha-Reeb graph", r.merged.graph.node_count());
  row("#Edges in alpha-Reeb graph", r.merged.graph.edge_count());
  row("beta1", betti1(r.merged.graph));
  row("alpha", cfg.alpha);
  row("Graph reconstruction time", r.seconds);
  open_out(dir / "summary.txt") << summary.str();
  out << summary.str();
  return kExitOk;
}

struct EvalConfig {
  InputOptions input;
  double alpha = 0.0;
  std::optional<VertexId> root;
  bool no_simplify = false;
  std::optional<std::string> graph_file;
  std::size_t points = 100;
  std::optional<std::size_t> pairs;
  std::uint64_t seed = 0;
  std::optional<double> eps;
  std::string bound_variant = "standard";
  std::string out_dir = ".";
};

int run_eval(const EvalConfig& cfg, std::ostream& out) {
  const Dataset ds = load_dataset(cfg.input, true);
  MetricGraph g;
  std::vector<GraphLocation> assignment;
  TableSummary summary;
  summary.original_points = ds.graph.vertex_count();
  summary.original_edges = ds.graph.edge_count();
  if (cfg.graph_file) {
    auto loaded = reconstruction_from_json(*cfg.graph_file, ds.graph.vertex_count());
    g = std::move(loaded.graph);
    assignment = std::move(loaded.assignment);
  } else {
    if (!(cfg.alpha > 0.0)) throw UsageError("--alpha is required without --graph");
    auto r = reconstruct(ds.graph, cfg.alpha, cfg.root, !cfg.no_simplify);
    summary.reconstruction_time_s = r.seconds;
    g = std::move(r.merged.graph);
    assignment = flat_assignment(r.merged);
  }
  summary.reeb_nodes = g.node_count();
  summary.reeb_edges = g.edge_count();

  const auto labels = connected_components(ds.graph);
  std::vector<VertexPair> pairs;
  if (cfg.pairs) {
    pairs = sample_pairs(labels, *cfg.pairs, cfg.seed);
  } else {
    pairs = pairs_among(sample_points(labels, cfg.points, cfg.seed), labels);
  }
  if (pairs.empty()) throw Error("no pair of sampled points shares a component");
  const auto report = distortion_report(ds.graph, g, assignment, pairs);

  json j = json::parse(report_to_json(report, summary));
  j["seed"] = cfg.seed;
  if (cfg.eps) {
    const double eps = *cfg.eps;
    const auto variant = cfg.bound_variant == "doubled" ? BoundVariant::kDoubled : BoundVariant::kStandard;
    const std::size_t b1 = betti1(g);
    // The reconstructed graph stands in for the comparison graph G'.
    const BoundInputs reeb_in{b1, edge_length_census(g, 8.0 * eps), cfg.alpha, eps};
    const BoundInputs alpha_in{b1, edge_length_census(g, 4.0 * (cfg.alpha + 2.0 * eps)), cfg.alpha, eps};
    j["bounds"] = {{"variant", cfg.bound_variant},
                   {"beta1", b1},
                   {"eps", eps},
                   {"reeb", {{"n_e", reeb_in.n_e}, {"value", bound_reeb(reeb_in, variant)}}},
                   {"alpha_reeb", {{"n_e", alpha_in.n_e}, {"value", bound_alpha_reeb(alpha_in)}}}};
  }

  const fs::path dir = cfg.out_dir;
  ensure_dir(dir);
  open_out(dir / "report.json") << j.dump(2) << '\n';
  const std::string table = report_to_table(report, summary);
  open_out(dir / "report.txt") << table;
  out << table;
  out << "pairs: " << report.pair_count << '\n';
  if (cfg.eps) {
    out << "bound (" << cfg.bound_variant << "): " << j["bounds"]["reeb"]["value"].get<double>() << '\n';
    out << "alpha-Reeb bound: " << j["bounds"]["alpha_reeb"]["value"].get<double>() << '\n';
  }
  return kExitOk;
}

struct BettiConfig {
  InputOptions input;
  double alpha = 0.0;
  std::size_t max_points = kDefaultMaxPoints;
  std::optional<std::string> out_file;
};

int run_betti(const BettiConfig& cfg, std::ostream& out) {
  const Dataset ds = load_dataset(cfg.input, false);
  const DistanceMatrix metric = ds.cloud ? DistanceMatrix::from_points(*ds.cloud)
                                         : DistanceMatrix::from_graph(ds.graph);
  const double outer = 3.0 * cfg.alpha;
  const auto complex = rips_two_skeleton(metric, outer, cfg.max_points);
  const auto bars = h1_persistence(complex);
  const auto rank = static_cast<std::size_t>(std::count_if(
      bars.begin(), bars.end(), [&](const PersistencePair& p) { return p.birth <= cfg.alpha && p.death > outer; }));

  std::ostringstream text;
  text << std::setprecision(17);
  text << "beta1," << rank << '\n';
  text << "birth,death\n";
  for (const auto& p : bars) {
    text << p.birth << ',';
    if (std::isinf(p.death)) {
      text << "inf";
    } else {
      text << p.death;
    }
    text << '\n';
  }
  if (cfg.out_file) {
    open_out(*cfg.out_file) << text.str();
    out << "beta1," << rank << '\n';
  } else {
    out << text.str();
  }
  return kExitOk;
}

struct SynthConfig {
  std::string kind;
  std::size_t n = 500;
  double noise = 0.0;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::size_t traces = 300;
  std::size_t length = 500;
  std::optional<std::string> out_file;
};

int run_synth(const SynthConfig& cfg, std::ostream& out) {
  std::ostringstream text;
  if (cfg.kind == "highway_crossing") {
    HighwayParams p;
    p.traces = cfg.traces;
    p.samples = cfg.length;
    p.seed = cfg.seed;
    if (cfg.noise > 0.0) p.noise = cfg.noise;
    write_traces(text, highway_crossing(p));
  } else {
    const ShapeParams p{cfg.n, cfg.noise, cfg.scale, cfg.seed};
    write_points_csv(text, sample_shape(parse_shape(cfg.kind), p));
  }
  if (cfg.out_file) {
    open_out(*cfg.out_file) << text.str();
  } else {
    out << text.str();
  }
  return kExitOk;
}

struct BenchConfig {
  std::vector<std::size_t> sizes{10'000, 100'000, 1'000'000};
  double alpha = 1.0;
  std::size_t repeats = 3;
};

NeighborGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return NeighborGraph(n, std::move(edges));
}

int run_bench(const BenchConfig& cfg, std::ostream& out) {
  if (!std::is_sorted(cfg.sizes.begin(), cfg.sizes.end())) {
    throw UsageError("--sizes must be ascending");
  }
  out << std::left << std::setw(10) << "n" << std::setw(14) << "seconds" << std::setw(16)
      << "s/(n log n)";
  if (cfg.sizes.size() > 1) out << "ratio";
  out << '\n';
  std::optional<double> first;
  for (std::size_t n : cfg.sizes) {
    if (n < 2) throw std::invalid_argument("bench sizes must be at least 2");
    const NeighborGraph g = path_graph(n);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t rep = 0; rep < std::max<std::size_t>(cfg.repeats, 1); ++rep) {
      const auto t0 = Clock::now();
      const auto result = alpha_reeb(g, 0, cfg.alpha);
      best = std::min(best, seconds_since(t0));
      if (result.graph.edge_count() == 0) throw ConstructionError("empty reconstruction");
    }
    const double nlogn = static_cast<double>(n) * std::log2(static_cast<double>(n));
    const double normalized = best / nlogn;
    if (!first) first = normalized;
    out << std::left << std::setw(10) << n << std::setw(14) << best << std::setw(16) << normalized;
    if (cfg.sizes.size() > 1) out << normalized / *first;
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric graph reconstruction with alpha-Reeb graphs", "metrecon"};
  app.require_subcommand(1);

  ReconstructConfig rc;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Build the alpha-Reeb graph of each component");
  add_input_options(*reconstruct_cmd, rc.input, true);
  reconstruct_cmd->add_option("--alpha", rc.alpha, "Interval length")->required()->check(CLI::PositiveNumber);
  reconstruct_cmd->add_option("--root", rc.root, "Root vertex (default: smallest id per component)");
  reconstruct_cmd->add_flag("--no-simplify", rc.no_simplify, "Keep every interval slot as a node");
  reconstruct_cmd->add_option("--out", rc.out_dir, "Output directory")->capture_default_str();

  EvalConfig ec;
  auto* eval_cmd = app.add_subcommand("eval", "Distortion statistics of a reconstruction");
  add_input_options(*eval_cmd, ec.input, true);
  eval_cmd->add_option("--alpha", ec.alpha, "Interval length")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--root", ec.root, "Root vertex");
  eval_cmd->add_flag("--no-simplify", ec.no_simplify, "Evaluate the unsimplified graph");
  eval_cmd->add_option("--graph", ec.graph_file, "graph.json written by reconstruct")->check(CLI::ExistingFile);
  eval_cmd->add_option("--points", ec.points, "Sampled points; all same-component pairs among them are used")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval_cmd->add_option("--pairs", ec.pairs, "Sample this many pairs directly instead of points")
      ->check(CLI::PositiveNumber)
      ->excludes("--points");
  eval_cmd->add_option("--seed", ec.seed, "Sampling seed")->capture_default_str();
  eval_cmd->add_option("--eps", ec.eps, "Sampling error for the Gromov-Hausdorff bounds")
      ->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--bound-variant", ec.bound_variant,
                       "standard: (b+1)(17+8N)eps; doubled: twice that")
      ->check(CLI::IsMember({"standard", "doubled"}))
      ->capture_default_str();
  eval_cmd->add_option("--out", ec.out_dir, "Output directory")->capture_default_str();

  BettiConfig bc;
  auto* betti_cmd = app.add_subcommand(
      "betti",
      "Estimate b1 as rank H1(Rips(alpha)) -> H1(Rips(3 alpha)).\n"
      "The estimate equals b1 of the sampled graph G when the sample D satisfies\n"
      "d_GH(G, D) < alpha < 3 l(G) / 16 with l(G) the length of the shortest cycle\n"
      "(and d_GH(G, D) < l(G) / 16); these conditions cannot be checked from the data.");
  add_input_options(*betti_cmd, bc.input, false);
  betti_cmd->add_option("--alpha", bc.alpha, "Inner scale")->required()->check(CLI::PositiveNumber);
  betti_cmd->add_option("--max-points", bc.max_points, "Refuse larger inputs")->capture_default_str();
  betti_cmd->add_option("--out", bc.out_file, "Write rank and barcode CSV here");

  SynthConfig sc;
  auto* synth_cmd = app.add_subcommand(
      "synth",
      "Generate a dataset.\n"
      "Shapes (CSV points, n samples evenly spaced by arc length, Gaussian noise):\n"
      "  circle, theta (circle + diameter), lollipop (circle + stick of length 2s),\n"
      "  y_graph (three spokes), segment, figure_eight (two tangent circles).\n"
      "highway_crossing (trace file): two perpendicular roads of length 12 through\n"
      "  the origin, lanes 0.1 off the axis with right-hand traffic, quarter-circle\n"
      "  right-turn ramps tangent to both lanes (centres 3 from both axes). Traces\n"
      "  cycle through the 4 straight and 4 turning routes with random speed.");
  synth_cmd->add_option("kind", sc.kind, "Dataset kind")
      ->required()
      ->check(CLI::IsMember({"circle", "theta", "lollipop", "y_graph", "segment", "figure_eight",
                             "highway_crossing"}));
  synth_cmd->add_option("--n", sc.n, "Points (shapes)")->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--noise", sc.noise, "Noise standard deviation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth_cmd->add_option("--scale", sc.scale, "Circle radius or segment length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--seed", sc.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--traces", sc.traces, "Traces (highway_crossing)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--length", sc.length, "Samples per trace (highway_crossing)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100'000'000}))
      ->capture_default_str();
  synth_cmd->add_option("--out", sc.out_file, "Output file (default: stdout)");

  BenchConfig bb;
  auto* bench_cmd = app.add_subcommand("bench", "Time the pipeline on path graphs");
  bench_cmd->add_option("--sizes", bb.sizes, "Vertex counts, ascending")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--alpha", bb.alpha, "Interval length")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--repeats", bb.repeats, "Runs per size (minimum reported)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (reconstruct_cmd->parsed()) return run_reconstruct(rc, out);
    if (eval_cmd->parsed()) return run_eval(ec, out);
    if (betti_cmd->parsed()) return run_betti(bc, out);
    if (synth_cmd->parsed()) return run_synth(sc, out);
    if (bench_cmd->parsed()) return run_bench(bb, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace metrecon
