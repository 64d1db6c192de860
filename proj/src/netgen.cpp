#include "geonet/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>
#include <tuple>

#include "geonet/error.hpp"
#include "geonet/parallel.hpp"
#include "geonet/text_io.hpp"

namespace geonet {

namespace {

struct CellEntry {
  std::int64_t cx;
  std::int64_t cy;
  NodeId id;

  auto key() const { return std::tie(cx, cy, id); }
};

}  // namespace

Graph unit_disk_graph(std::span<const Point> positions, double radius, std::size_t workers) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("radius must be positive");
  const std::size_t n = positions.size();
  if (n == 0) return Graph::from_adjacency({});

  double min_x = positions[0].x, min_y = positions[0].y;
  for (const Point& p : positions) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
  }

  std::vector<CellEntry> cells(n);
  for (NodeId v = 0; v < n; ++v) {
    cells[v] = {static_cast<std::int64_t>(std::floor((positions[v].x - min_x) / radius)),
                static_cast<std::int64_t>(std::floor((positions[v].y - min_y) / radius)), v};
  }
  std::vector<CellEntry> sorted = cells;
  std::sort(sorted.begin(), sorted.end(),
            [](const CellEntry& a, const CellEntry& b) { return a.key() < b.key(); });

  const double r2 = radius * radius;
  std::vector<std::vector<NodeId>> lists(n);
  const BatchPlan plan = BatchPlan::for_items(n, 256, 256);
  run_batches(plan.batch_count(), workers, [&](std::size_t b) {
    for (std::size_t v = plan.begin(b); v < plan.end(b); ++v) {
      const CellEntry& c = cells[v];
      auto& out = lists[v];
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        // Cells (cx+dx, cy-1..cy+1) are contiguous in (cx, cy) order.
        const auto lo = std::lower_bound(
            sorted.begin(), sorted.end(), std::make_pair(c.cx + dx, c.cy - 1),
            [](const CellEntry& e, const std::pair<std::int64_t, std::int64_t>& k) {
              return std::tie(e.cx, e.cy) < std::tie(k.first, k.second);
            });
        for (auto it = lo; it != sorted.end() && it->cx == c.cx + dx && it->cy <= c.cy + 1;
             ++it) {
          if (it->id != v && squared_distance(positions[v], positions[it->id]) <= r2)
            out.push_back(it->id);
        }
      }
      std::sort(out.begin(), out.end());
    }
  });
  return Graph::from_adjacency(std::move(lists));
}

SensorNetwork::SensorNetwork(std::vector<Point> positions, double radius, std::size_t workers)
    : positions_(std::move(positions)), radius_(radius) {
  for (const Point& p : positions_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw DomainError("node coordinates must be finite");
  }
  graph_ = unit_disk_graph(positions_, radius_, workers);
}

double SensorNetwork::mean_degree() const {
  return node_count() == 0 ? 0.0
                           : 2.0 * static_cast<double>(edge_count()) /
                                 static_cast<double>(node_count());
}

SensorNetwork build_network(const PolygonRegion& region, std::size_t n, double radius,
                            std::uint64_t seed, std::size_t workers) {
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  SensorNetwork network(sample_uniform(region, n, seed), radius, workers);
  network.attach_region(region);
  return network;
}

double expected_degree(double region_area, std::size_t n, double radius) {
  if (!(region_area > 0.0)) throw DomainError("region area must be positive");
  if (n <= 1) return 0.0;
  return static_cast<double>(n - 1) * std::numbers::pi * radius * radius / region_area;
}

double radius_for_degree(double region_area, std::size_t n, double degree) {
  if (!(region_area > 0.0)) throw DomainError("region area must be positive");
  if (n <= 1 || !(degree > 0.0)) throw DomainError("need n > 1 and a positive degree");
  return std::sqrt(degree * region_area / (static_cast<double>(n - 1) * std::numbers::pi));
}

std::vector<GroundTruthLabel> ground_truth(const SensorNetwork& network, double band) {
  if (!network.region()) throw Unsupported("ground truth needs an attached region");
  if (!(band > 0.0)) throw DomainError("ground-truth band must be positive");
  const PolygonRegion& region = *network.region();
  std::vector<GroundTruthLabel> labels;
  labels.reserve(network.node_count());
  for (const Point& p : network.positions()) {
    labels.push_back(distance_to_boundary(region, p) < band ? GroundTruthLabel::boundary
                                                            : GroundTruthLabel::interior);
  }
  return labels;
}

void write_network(std::ostream& out, const SensorNetwork& network) {
  out << network.node_count() << ' ' << format_real(network.radius()) << '\n';
  for (NodeId v = 0; v < network.node_count(); ++v) {
    const Point p = network.position(v);
    out << v << ' ' << format_real(p.x) << ' ' << format_real(p.y) << '\n';
  }
  for (const auto& [u, v] : network.graph().edges()) out << u << ' ' << v << '\n';
}

void save_network(const std::filesystem::path& path, const SensorNetwork& network) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_network(out, network);
  if (!out) throw IoError("write failed: " + path.string());
}

SensorNetwork read_network(std::istream& in) {
  LineReader reader(in);
  auto header = reader.require("header \"n radius\"");
  expect_fields(header, 2, reader.line(), "header \"n radius\"");
  const std::uint64_t n = parse_count(header[0], reader.line());
  const double radius = parse_real(header[1], reader.line());
  if (!(radius > 0.0)) throw ParseError(reader.line(), "radius must be positive");

  std::vector<Point> positions(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto tokens = reader.require("node line \"id x y\"");
    expect_fields(tokens, 3, reader.line(), "node line \"id x y\"");
    if (parse_count(tokens[0], reader.line()) != i)
      throw ParseError(reader.line(), "node ids must be consecutive from 0");
    positions[i] = {parse_real(tokens[1], reader.line()), parse_real(tokens[2], reader.line())};
  }

  std::vector<Edge> edges;
  std::size_t first_edge_line = 0;
  while (auto tokens = reader.next()) {
    if (first_edge_line == 0) first_edge_line = reader.line();
    expect_fields(*tokens, 2, reader.line(), "edge line \"u v\"");
    const auto u = parse_count((*tokens)[0], reader.line());
    const auto v = parse_count((*tokens)[1], reader.line());
    if (u >= v || v >= n) throw ParseError(reader.line(), "edge must satisfy u < v < n");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }

  std::sort(edges.begin(), edges.end());
  SensorNetwork network(std::move(positions), radius);
  if (network.graph().edges() != edges) {
    throw ParseError(first_edge_line,
                     "edge list does not match the unit-disk graph of the positions");
  }
  return network;
}

SensorNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open network file " + path.string());
  return read_network(in);
}

}  // namespace geonet
