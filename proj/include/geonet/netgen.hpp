#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "geonet/geometry.hpp"
#include "geonet/graph.hpp"

namespace geonet {

// Node positions plus their unit-disk communication graph: an edge joins
// u != v iff |p_u - p_v| <= radius.
class SensorNetwork {
 public:
  SensorNetwork() = default;

  // Builds the adjacency with a uniform grid of cell size `radius`.
  SensorNetwork(std::vector<Point> positions, double radius, std::size_t workers = 0);

  const std::vector<Point>& positions() const { return positions_; }
  Point position(NodeId v) const { return positions_[v]; }
  double radius() const { return radius_; }
  const Graph& graph() const { return graph_; }
  std::size_t node_count() const { return positions_.size(); }
  std::size_t edge_count() const { return graph_.edge_count(); }
  double mean_degree() const;

  // Ground-truth back-reference; not part of the dump format.
  const std::optional<PolygonRegion>& region() const { return region_; }
  void attach_region(PolygonRegion region) { region_ = std::move(region); }

 private:
  std::vector<Point> positions_;
  double radius_ = 1.0;
  Graph graph_;
  std::optional<PolygonRegion> region_;
};

// Unit-disk adjacency via a uniform grid: candidate pairs come only from the
// 3x3 cell neighborhood. Ties at exactly `radius` are edges.
Graph unit_disk_graph(std::span<const Point> positions, double radius, std::size_t workers = 0);

// sample_uniform(region, n, seed) plus the unit-disk graph. The region is
// attached for ground-truth queries.
SensorNetwork build_network(const PolygonRegion& region, std::size_t n, double radius,
                            std::uint64_t seed, std::size_t workers = 0);

// (n - 1) * pi * r^2 / area: the expected degree of a node whose disk lies
// entirely inside the region.
double expected_degree(double region_area, std::size_t n, double radius);

// Radius that gives the requested interior expected degree.
double radius_for_degree(double region_area, std::size_t n, double degree);

enum class GroundTruthLabel : std::uint8_t { interior, boundary };

// boundary iff distance_to_boundary < band. Throws Unsupported without an
// attached region and DomainError unless band > 0.
std::vector<GroundTruthLabel> ground_truth(const SensorNetwork& network, double band);

// Dump format: "n radius", then n lines "id x y", then one "u v" per edge
// with u < v. Reals are written to round-trip exactly.
void write_network(std::ostream& out, const SensorNetwork& network);
void save_network(const std::filesystem::path& path, const SensorNetwork& network);

// Parses a dump and checks the edge list against the unit-disk predicate.
// Throws ParseError.
SensorNetwork read_network(std::istream& in);
SensorNetwork load_network(const std::filesystem::path& path);

}  // namespace geonet
