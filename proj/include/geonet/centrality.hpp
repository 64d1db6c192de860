#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geonet/graph.hpp"

namespace geonet {

enum class Measure : std::uint8_t {
  khop,               // parameter k
  stress,
  betweenness,
  restricted_stress,  // parameter delta
  stress1,            // unordered nonadjacent neighbor pairs
  normalized_st,
};

std::string measure_name(Measure m);

struct CentralityResult {
  Measure measure = Measure::stress;
  std::uint32_t parameter = 0;
  std::vector<double> values;

  // e.g. "khop(k=4)", "stress".
  std::string label() const;
};

// Single-source shortest-path DAG. Unreachable nodes have distance -1 and
// sigma 0. `order` lists reached nodes by non-decreasing distance.
struct ShortestPathCounts {
  NodeId source = 0;
  std::vector<std::int32_t> distance;
  std::vector<double> sigma;
  std::vector<std::vector<NodeId>> predecessors;
  std::vector<NodeId> order;
};

ShortestPathCounts shortest_path_counts(const Graph& g, NodeId source);

// |{u != v : hop(u, v) <= k}|. Throws DomainError for k == 0.
CentralityResult khop_size(const Graph& g, std::uint32_t k, std::size_t workers = 0);

// Sum over ordered pairs (s, t), s != t, of the number of shortest s-t
// paths through v as an interior vertex.
CentralityResult stress_centrality(const Graph& g, std::size_t workers = 0);

// Sum over ordered pairs of sigma_st(v) / sigma_st (Brandes accumulation).
CentralityResult betweenness_centrality(const Graph& g, std::size_t workers = 0);

// Stress over ordered pairs with both endpoints within hop distance delta of
// v; path lengths are those of the full graph. Throws DomainError for
// delta == 0.
CentralityResult restricted_stress(const Graph& g, std::uint32_t delta, std::size_t workers = 0);

// binom(deg v, 2) minus the number of edges among the neighbors of v.
std::vector<std::uint64_t> stress1_counts(const Graph& g, std::size_t workers = 0);
CentralityResult stress1(const Graph& g, std::size_t workers = 0);

// 2 stress1(v) / (deg(v) (deg(v) - 1)); 0 when deg(v) <= 1.
double normalized_st_value(std::uint64_t stress1, std::size_t degree);
CentralityResult normalized_st(const Graph& g, std::size_t workers = 0);

// "node_id,value" rows after a "# measure=..." comment line.
void write_centrality_csv(std::ostream& out, const CentralityResult& result);
CentralityResult read_centrality_csv(std::istream& in);

}  // namespace geonet
