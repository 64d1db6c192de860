#include "geonet/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace geonet {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<std::vector<NodeId>> lists(node_count);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count)
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) + " " +
                                  std::to_string(v));
    if (u == v) throw std::invalid_argument("self-loop at node " + std::to_string(u));
    lists[u].push_back(v);
    lists[v].push_back(u);
  }
  return from_adjacency(std::move(lists));
}

Graph Graph::from_adjacency(std::vector<std::vector<NodeId>> lists) {
  if (lists.size() > std::numeric_limits<NodeId>::max())
    throw std::invalid_argument("too many nodes");
  Graph g;
  g.offsets_.reserve(lists.size() + 1);
  g.offsets_.push_back(0);
  std::size_t total = 0;
  for (auto& list : lists) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    total += list.size();
  }
  g.targets_.reserve(total);
  for (NodeId v = 0; v < lists.size(); ++v) {
    for (NodeId w : lists[v]) {
      if (w == v) throw std::invalid_argument("self-loop at node " + std::to_string(v));
      if (w >= lists.size()) throw std::invalid_argument("neighbor id out of range");
      g.targets_.push_back(w);
    }
    g.offsets_.push_back(g.targets_.size());
  }
  for (NodeId v = 0; v < lists.size(); ++v) {
    for (NodeId w : g.neighbors(v)) {
      if (!g.has_edge(w, v)) throw std::invalid_argument("adjacency is not symmetric");
    }
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto list = neighbors(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::uint32_t> component_labels(const Graph& g) {
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(g.node_count(), unset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (label[w] == unset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  const auto label = component_labels(g);
  std::uint32_t count = 0;
  for (auto l : label) count = std::max(count, l + 1);
  std::vector<std::vector<NodeId>> components(count);
  for (NodeId v = 0; v < g.node_count(); ++v) components[label[v]].push_back(v);
  return components;
}

std::size_t count_common(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

}  // namespace geonet
