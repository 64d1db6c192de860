#pragma once

// Test-only reference implementations. None of these share code paths with
// the library routines they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "geonet/geometry.hpp"
#include "geonet/graph.hpp"

namespace oracle {

using geonet::Edge;
using geonet::Graph;
using geonet::NodeId;
using geonet::Point;

inline constexpr int unreachable = std::numeric_limits<int>::max() / 4;

// Floyd-Warshall hop distances.
inline std::vector<std::vector<int>> all_pairs_hops(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, unreachable));
  for (NodeId v = 0; v < n; ++v) {
    d[v][v] = 0;
    for (NodeId w : g.neighbors(v)) d[v][w] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

struct PathCentralities {
  std::vector<double> stress;
  std::vector<double> betweenness;
  std::vector<double> rstress1;
  std::vector<double> rstress2;
};

// Enumerates every shortest path of every ordered pair explicitly.
inline PathCentralities enumerate_paths(const Graph& g) {
  const std::size_t n = g.node_count();
  const auto d = all_pairs_hops(g);
  PathCentralities out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                       std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  std::vector<NodeId> path;
  std::vector<std::vector<NodeId>> paths;
  std::function<void(NodeId, NodeId)> walk = [&](NodeId cur, NodeId t) {
    path.push_back(cur);
    if (cur == t) {
      paths.push_back(path);
    } else {
      for (NodeId w : g.neighbors(cur)) {
        if (d[w][t] == d[cur][t] - 1) walk(w, t);
      }
    }
    path.pop_back();
  };
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s == t || d[s][t] >= unreachable) continue;
      paths.clear();
      walk(s, t);
      const double total = static_cast<double>(paths.size());
      std::vector<double> through(n, 0.0);
      for (const auto& p : paths)
        for (std::size_t i = 1; i + 1 < p.size(); ++i) through[p[i]] += 1.0;
      for (NodeId v = 0; v < n; ++v) {
        if (through[v] == 0.0) continue;
        out.stress[v] += through[v];
        out.betweenness[v] += through[v] / total;
        if (d[v][s] <= 1 && d[v][t] <= 1) out.rstress1[v] += through[v];
        if (d[v][s] <= 2 && d[v][t] <= 2) out.rstress2[v] += through[v];
      }
    }
  }
  return out;
}

// Unordered neighbor pairs that are not adjacent, by direct pair checks.
inline std::vector<std::uint64_t> nonadjacent_neighbor_pairs(const Graph& g) {
  std::vector<std::uint64_t> out(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto adj = g.neighbors(v);
    for (std::size_t i = 0; i < adj.size(); ++i)
      for (std::size_t j = i + 1; j < adj.size(); ++j) {
        const auto other = g.neighbors(adj[i]);
        if (std::find(other.begin(), other.end(), adj[j]) == other.end()) ++out[v];
      }
  }
  return out;
}

inline Graph brute_force_unit_disk(const std::vector<Point>& pts, double radius) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < pts.size(); ++i)
    for (NodeId j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
      if (dx * dx + dy * dy <= radius * radius) edges.emplace_back(i, j);
    }
  return Graph::from_edges(pts.size(), edges);
}

inline Graph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

inline std::vector<Point> random_points(std::size_t n, double side, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

inline Graph random_geometric(std::size_t n, double side, double radius, std::mt19937_64& rng) {
  return brute_force_unit_disk(random_points(n, side, rng), radius);
}

// Relabels node v as perm[v].
inline Graph relabel(const Graph& g, const std::vector<NodeId>& perm) {
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(g.node_count(), edges);
}

// Composite Simpson rule with `panels` (even) subintervals.
template <class F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Overlap of two unit disks at center distance x, as a 1D integral of the
// chord length of the intersection in the direction across the centers.
inline double lens_area_by_integration(double x) {
  // Intersection region: |y| <= sqrt(1 - max(u^2, (u - x)^2)) over u.
  auto chord = [x](double u) {
    const double a = std::max(u * u, (u - x) * (u - x));
    return a >= 1.0 ? 0.0 : 2.0 * std::sqrt(1.0 - a);
  };
  return simpson(chord, x - 1.0, 1.0, 200000);
}

// 2D midpoint-rule indicator integration of the disk overlap.
inline double lens_area_by_grid(double x, int cells) {
  const double lo = x - 1.0, hi = 1.0;
  const double hx = (hi - lo) / cells, hy = 2.0 / cells;
  double hits = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double u = lo + (i + 0.5) * hx;
    for (int j = 0; j < cells; ++j) {
      const double w = -1.0 + (j + 0.5) * hy;
      if (u * u + w * w <= 1.0 && (u - x) * (u - x) + w * w <= 1.0) hits += 1.0;
    }
  }
  return hits * hx * hy;
}

inline double sigma_closed_form() { return 3.0 * std::sqrt(3.0) / (4.0 * std::numbers::pi); }

}  // namespace oracle
