#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace geonet {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Undirected simple graph in compressed sparse row form. Neighbor lists are
// sorted ascending and free of duplicates and self-loops.
class Graph {
 public:
  Graph() = default;

  // Duplicate edges collapse; self-loops and out-of-range ids throw
  // std::invalid_argument.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  // Lists must already be symmetric; they are sorted and deduplicated here.
  static Graph from_adjacency(std::vector<std::vector<NodeId>> lists);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  // Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

// Connected components, each sorted ascending, ordered by smallest member.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

// Component index for every node, consistent with connected_components().
std::vector<std::uint32_t> component_labels(const Graph& g);

// Size of the intersection of two ascending id lists.
std::size_t count_common(std::span<const NodeId> a, std::span<const NodeId> b);

}  // namespace geonet
