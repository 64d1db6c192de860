// geonet: region ingestion, network generation, centrality, theory
// experiments, protocol runs, and SVG rendering.
//
// Exit codes: 0 ok, 1 usage, 2 input error, 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "geonet/centrality.hpp"
#include "geonet/error.hpp"
#include "geonet/geometry.hpp"
#include "geonet/netgen.hpp"
#include "geonet/protocol.hpp"
#include "geonet/render.hpp"
#include "geonet/text_io.hpp"
#include "geonet/theory.hpp"

namespace fs = std::filesystem;
using namespace geonet;

namespace {

enum ExitCode { ok = 0, usage = 1, input = 2, numerical = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to `path`, or to stdout when the path is empty.
template <typename F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

std::string real(double v) { return format_real(v, 10); }

struct GenerateArgs {
  std::string region;
  std::size_t nodes = 0;
  std::optional<double> radius;
  std::optional<double> degree;
  std::uint64_t seed = 0;
  std::string out;
};

void cmd_generate(const GenerateArgs& a) {
  const PolygonRegion region = read_region_file(a.region);
  double radius = 0.0;
  if (a.radius) {
    radius = *a.radius;
  } else {
    if (!a.degree) throw UsageError("one of --radius or --degree is required");
    if (!(*a.degree > 0.0)) throw UsageError("--degree must be positive");
    if (a.nodes < 2) throw UsageError("--degree needs at least 2 nodes");
    radius = radius_for_degree(area(region), a.nodes, *a.degree);
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) throw UsageError("--radius must be positive");
  const SensorNetwork net = build_network(region, a.nodes, radius, a.seed);
  emit(a.out, [&](std::ostream& o) { write_network(o, net); });
  std::ostream& log = a.out.empty() ? std::cerr : std::cout;
  log << "nodes=" << net.node_count() << " edges=" << net.edge_count()
      << " mean_degree=" << real(net.mean_degree()) << " radius=" << format_real(radius) << '\n';
}

struct CentralityArgs {
  std::string network;
  std::string measure;
  std::uint32_t k = 1;
  std::uint32_t delta = 1;
  std::string out;
};

void cmd_centrality(const CentralityArgs& a) {
  const SensorNetwork net = load_network(a.network);
  const Graph& g = net.graph();
  const bool global = a.measure == "stress" || a.measure == "betweenness";
  if (global && g.node_count() > 50000)
    std::cerr << "warning: " << a.measure << " on " << g.node_count()
              << " nodes runs one BFS per node and may take a long time\n";
  CentralityResult result;
  if (a.measure == "khop") {
    if (a.k == 0) throw UsageError("--k must be at least 1");
    result = khop_size(g, a.k);
  } else if (a.measure == "stress") {
    result = stress_centrality(g);
  } else if (a.measure == "betweenness") {
    result = betweenness_centrality(g);
  } else if (a.measure == "rstress") {
    if (a.delta == 0) throw UsageError("--delta must be at least 1");
    result = restricted_stress(g, a.delta);
  } else if (a.measure == "stress1") {
    result = stress1(g);
  } else {
    result = normalized_st(g);
  }
  emit(a.out, [&](std::ostream& o) { write_centrality_csv(o, result); });
}

struct ProtocolArgs {
  std::string network;
  std::string region;
  std::optional<double> band;
  double theta = 1.0 / 3.0;
  bool filter = false;
  std::uint32_t filter_min = 2;
  std::optional<NodeId> root;
  std::string out;
  std::string trace;
};

void cmd_protocol(const ProtocolArgs& a) {
  SensorNetwork net = load_network(a.network);
  if (!a.region.empty()) net.attach_region(read_region_file(a.region));
  if (a.band && !a.region.empty() && !(*a.band > 0.0)) throw UsageError("--band must be positive");
  if (a.root && *a.root >= net.node_count())
    throw UsageError("--root " + std::to_string(*a.root) + " is not a node id");

  ProtocolConfig cfg;
  cfg.theta = a.theta;
  cfg.filter_enabled = a.filter;
  cfg.filter_min_boundary_neighbors = a.filter_min;
  cfg.explicit_root = a.root;
  cfg.validate();
  if (net.node_count() == 0) throw DomainError("network has no nodes");

  const ProtocolResult result = run_protocol(net.graph(), cfg);
  emit(a.out, [&](std::ostream& o) { write_classification_csv(o, net, result); });
  if (!a.trace.empty())
    emit(a.trace, [&](std::ostream& o) { write_trace_csv(o, result.trace); });

  std::ostream& log = a.out.empty() ? std::cerr : std::cout;
  const auto& classes = result.classifications();
  std::size_t boundary = 0;
  for (auto c : classes) boundary += c == Classification::boundary;
  const MessageSummary msg = message_accounting(result.trace);
  log << "nodes=" << net.node_count() << " components=" << result.trace.component_count
      << (result.trace.multi_component() ? " (multi-component)" : "") << " boundary=" << boundary
      << " threshold=" << real(result.nodes[result.roots.front()].threshold.value_or(0.0)) << '\n';
  log << "rounds=" << msg.rounds << " messages=" << msg.total_messages
      << " payload=" << msg.total_payload << " payload_ratio=" << real(msg.payload_ratio) << '\n';

  const StripReport strips = summarize_strips(boundary_strips(net.graph(), classes));
  log << "strips=" << strips.strip_count << " major_strips=" << strips.major_count
      << " major_coverage=" << real(strips.major_coverage) << '\n';

  if (net.region()) {
    const double band = a.band.value_or(net.radius());
    const auto truth = ground_truth(net, band);
    const ClassificationErrors e = compare_with_ground_truth(classes, truth);
    log << "band=" << real(band) << " false_negative_rate=" << real(e.false_negative_rate())
        << " false_positive_rate=" << real(e.false_positive_rate()) << '\n';
  }
}

struct DistArgs {
  double s = 0.0;
  double mu = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t bins = 100;
  std::string out;
};

void cmd_theory_sigma() {
  const double sigma = sigma_interior();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10f", sigma);
  std::cout << buf << '\n';
}

void cmd_theory_dist(const DistArgs& a) {
  if (!(a.s >= 0.0) || !std::isfinite(a.s)) throw UsageError("--s must be a non-negative number");
  if (!(a.mu > 0.0) || !std::isfinite(a.mu)) throw UsageError("--mu must be positive");
  if (a.samples == 0) throw UsageError("--samples must be at least 1");
  if (a.bins == 0) throw UsageError("--bins must be at least 1");
  StSamplingOptions opts;
  opts.bins = a.bins;
  const StDistribution d = sample_st(a.s, a.mu, a.samples, a.seed, opts);
  emit(a.out, [&](std::ostream& o) { write_distribution_csv(o, d); });
  if (!a.out.empty()) {
    fs::path sidecar(a.out);
    sidecar.replace_extension(".json");
    emit(sidecar.string(), [&](std::ostream& o) { write_distribution_sidecar(o, d); });
  }
  std::ostream& log = a.out.empty() ? std::cerr : std::cout;
  log << "samples=" << d.samples << " mean=" << real(d.mean) << " stddev=" << real(d.stddev)
      << " zero_count=" << d.zero_count << '\n';
}

struct RenderArgs {
  std::string network;
  std::string values;
  std::string classes;
  std::string region;
  std::string out;
  double point_size = 0.0;
  double width = 800.0;
};

void cmd_render(const RenderArgs& a) {
  const SensorNetwork net = load_network(a.network);
  std::optional<PolygonRegion> outline;
  if (!a.region.empty()) outline = read_region_file(a.region);
  if (!(a.width > 0.0)) throw UsageError("--width must be positive");
  if (!(a.point_size >= 0.0)) throw UsageError("--point-size must be non-negative");
  RenderOptions opts;
  opts.width_px = a.width;
  opts.point_radius = a.point_size;
  const PolygonRegion* shape = outline ? &*outline : nullptr;

  std::string svg;
  if (!a.values.empty()) {
    auto in = open_input(a.values);
    const CentralityResult values = read_centrality_csv(in);
    svg = render_values_svg(net, values.values, shape, opts);
  } else {
    auto in = open_input(a.classes);
    const auto classes = read_classification_csv(in);
    svg = render_classes_svg(net, classes, shape, opts);
  }
  emit(a.out, [&](std::ostream& o) { o << svg; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary recognition in geometric sensor networks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Deploy nodes uniformly in a region");
  generate->add_option("--region", gen.region, "Region file")->required();
  generate->add_option("--nodes,-n", gen.nodes, "Node count")->required();
  auto* radius_opt = generate->add_option("--radius,-r", gen.radius, "Communication radius");
  generate->add_option("--degree", gen.degree, "Expected interior degree (sets the radius)")
      ->excludes(radius_opt);
  generate->add_option("--seed", gen.seed, "Random seed")->required();
  generate->add_option("--out,-o", gen.out, "Network file (default stdout)");

  CentralityArgs cen;
  auto* centrality = app.add_subcommand("centrality", "Per-node centrality values");
  centrality->add_option("--network", cen.network, "Network file")->required();
  centrality->add_option("--measure", cen.measure, "Measure")
      ->required()
      ->check(CLI::IsMember({"khop", "stress", "betweenness", "rstress", "st", "stress1"}));
  centrality->add_option("--k", cen.k, "Hop radius for khop")->capture_default_str();
  centrality->add_option("--delta", cen.delta, "Pair radius for rstress")->capture_default_str();
  centrality->add_option("--out,-o", cen.out, "CSV output (default stdout)");

  ProtocolArgs pro;
  auto* protocol = app.add_subcommand("protocol", "Run the distributed boundary protocol");
  protocol->add_option("--network", pro.network, "Network file")->required();
  protocol->add_option("--region", pro.region, "Region file for ground-truth error rates");
  protocol->add_option("--band", pro.band, "Ground-truth band width (default: radius)");
  protocol->add_option("--theta", pro.theta, "Threshold factor, 0 < theta < sigma")
      ->capture_default_str();
  protocol->add_flag("--filter", pro.filter, "Enable the boundary-neighbor filter");
  protocol->add_option("--filter-min", pro.filter_min, "Boundary neighbors required to stay boundary")
      ->capture_default_str();
  protocol->add_option("--root", pro.root, "Force this node to be the root of its component");
  protocol->add_option("--out,-o", pro.out, "Classification CSV (default stdout)");
  protocol->add_option("--trace", pro.trace, "Trace CSV");

  auto* theory = app.add_subcommand("theory", "Geometric probability experiments");
  theory->require_subcommand(1);
  auto* sigma = theory->add_subcommand("sigma", "Print the interior expectation of st");
  DistArgs dist;
  auto* distribution = theory->add_subcommand("dist", "Monte-Carlo distribution of st");
  distribution->add_option("--s", dist.s, "Distance to the boundary in radii")->required();
  distribution->add_option("--mu", dist.mu, "Expected neighbors in a full disk")->required();
  distribution->add_option("--samples", dist.samples, "Sample count")->required();
  distribution->add_option("--seed", dist.seed, "Random seed")->required();
  distribution->add_option("--bins", dist.bins, "Histogram bins")->capture_default_str();
  distribution->add_option("--out,-o", dist.out, "CSV output; a .json summary is written next to it");

  RenderArgs ren;
  auto* render = app.add_subcommand("render", "SVG point map of values or classes");
  render->add_option("--network", ren.network, "Network file")->required();
  auto* values_opt = render->add_option("--values", ren.values, "Centrality CSV");
  auto* classes_opt = render->add_option("--classes", ren.classes, "Classification CSV");
  values_opt->excludes(classes_opt);
  render->add_option("--region", ren.region, "Region file for the outline");
  render->add_option("--out,-o", ren.out, "SVG output (default stdout)");
  render->add_option("--point-size", ren.point_size, "Circle radius in region units (0: auto)");
  render->add_option("--width", ren.width, "Image width in pixels")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*generate) cmd_generate(gen);
    else if (*centrality) cmd_centrality(cen);
    else if (*protocol) cmd_protocol(pro);
    else if (*sigma) cmd_theory_sigma();
    else if (*distribution) cmd_theory_dist(dist);
    else if (*render) {
      if (ren.values.empty() && ren.classes.empty())
        throw UsageError("one of --values or --classes is required");
      cmd_render(ren);
    }
    return ok;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input;
  }
}
