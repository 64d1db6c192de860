#include "geonet/centrality.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string_view>

#include "geonet/error.hpp"
#include "geonet/parallel.hpp"
#include "geonet/text_io.hpp"

namespace geonet {

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::khop: return "khop";
    case Measure::stress: return "stress";
    case Measure::betweenness: return "betweenness";
    case Measure::restricted_stress: return "rstress";
    case Measure::stress1: return "stress1";
    case Measure::normalized_st: return "st";
  }
  return "unknown";
}

std::string CentralityResult::label() const {
  switch (measure) {
    case Measure::khop: return "khop(k=" + std::to_string(parameter) + ")";
    case Measure::restricted_stress: return "rstress(delta=" + std::to_string(parameter) + ")";
    default: return measure_name(measure);
  }
}

namespace {

// Per-worker BFS scratch space reused across sources.
struct SweepWorkspace {
  std::vector<std::int32_t> distance;
  std::vector<double> sigma;
  std::vector<double> accum;
  std::vector<NodeId> order;

  explicit SweepWorkspace(std::size_t n) : distance(n, -1), sigma(n, 0.0), accum(n, 0.0) {
    order.reserve(n);
  }

  void bfs(const Graph& g, NodeId s) {
    for (NodeId v : order) {
      distance[v] = -1;
      sigma[v] = 0.0;
      accum[v] = 0.0;
    }
    order.clear();
    distance[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      for (NodeId w : g.neighbors(v)) {
        if (distance[w] < 0) {
          distance[w] = distance[v] + 1;
          order.push_back(w);
        }
        if (distance[w] == distance[v] + 1) sigma[w] += sigma[v];
      }
    }
  }
};

enum class Accumulation { stress, betweenness };

// Per-source sweeps over a fixed batch schedule; partial sums are reduced
// in batch order so the result does not depend on the worker count.
std::vector<double> sweep_all_sources(const Graph& g, Accumulation kind, std::size_t workers) {
  const std::size_t n = g.node_count();
  const BatchPlan plan = BatchPlan::for_items(n);
  std::vector<std::vector<double>> partial(plan.batch_count());

  run_batches(plan.batch_count(), workers, [&](std::size_t b) {
    std::vector<double> local(n, 0.0);
    SweepWorkspace ws(n);
    for (std::size_t s = plan.begin(b); s < plan.end(b); ++s) {
      ws.bfs(g, static_cast<NodeId>(s));
      for (std::size_t i = ws.order.size(); i-- > 0;) {
        const NodeId v = ws.order[i];
        double acc = 0.0;
        for (NodeId w : g.neighbors(v)) {
          if (ws.distance[w] != ws.distance[v] + 1) continue;
          if (kind == Accumulation::stress) {
            // Shortest paths leaving v towards its DAG descendants.
            acc += 1.0 + ws.accum[w];
          } else {
            acc += ws.sigma[v] / ws.sigma[w] * (1.0 + ws.accum[w]);
          }
        }
        ws.accum[v] = acc;
        if (v != s) local[v] += kind == Accumulation::stress ? ws.sigma[v] * acc : acc;
      }
    }
    partial[b] = std::move(local);
  });

  std::vector<double> total(n, 0.0);
  for (const auto& part : partial) {
    for (std::size_t v = 0; v < n; ++v) total[v] += part[v];
  }
  return total;
}

// Runs fn(v) for every node over the fixed batch schedule.
template <class PerNode>
void for_each_node(std::size_t n, std::size_t workers, PerNode&& fn) {
  const BatchPlan plan = BatchPlan::for_items(n, 256, 64);
  run_batches(plan.batch_count(), workers, [&](std::size_t b) {
    for (std::size_t v = plan.begin(b); v < plan.end(b); ++v) fn(static_cast<NodeId>(v));
  });
}

// Depth-limited BFS with stamp-based reset.
struct LimitedBfs {
  std::vector<std::uint32_t> stamp;
  std::vector<std::int32_t> distance;
  std::vector<double> sigma;
  std::vector<NodeId> order;
  std::uint32_t current = 0;

  explicit LimitedBfs(std::size_t n) : stamp(n, 0), distance(n, 0), sigma(n, 0.0) {}

  bool seen(NodeId v) const { return stamp[v] == current; }

  void run(const Graph& g, NodeId s, std::int32_t depth, bool count_paths) {
    ++current;
    order.clear();
    stamp[s] = current;
    distance[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      if (distance[v] == depth) {
        if (!count_paths) break;
        continue;
      }
      for (NodeId w : g.neighbors(v)) {
        if (!seen(w)) {
          stamp[w] = current;
          distance[w] = distance[v] + 1;
          sigma[w] = 0.0;
          order.push_back(w);
        }
        if (count_paths && distance[w] == distance[v] + 1) sigma[w] += sigma[v];
      }
    }
  }
};

}  // namespace

ShortestPathCounts shortest_path_counts(const Graph& g, NodeId source) {
  if (source >= g.node_count()) throw DomainError("source out of range");
  SweepWorkspace ws(g.node_count());
  ws.bfs(g, source);
  ShortestPathCounts out;
  out.source = source;
  out.distance = ws.distance;
  out.sigma = ws.sigma;
  out.order = ws.order;
  out.predecessors.resize(g.node_count());
  for (NodeId v : ws.order) {
    for (NodeId w : g.neighbors(v)) {
      if (ws.distance[w] == ws.distance[v] + 1) out.predecessors[w].push_back(v);
    }
  }
  return out;
}

CentralityResult khop_size(const Graph& g, std::uint32_t k, std::size_t workers) {
  if (k == 0) throw DomainError("k must be at least 1");
  const std::size_t n = g.node_count();
  CentralityResult result{Measure::khop, k, std::vector<double>(n, 0.0)};
  const BatchPlan plan = BatchPlan::for_items(n, 256, 64);
  run_batches(plan.batch_count(), workers, [&](std::size_t b) {
    LimitedBfs bfs(n);
    for (std::size_t v = plan.begin(b); v < plan.end(b); ++v) {
      bfs.run(g, static_cast<NodeId>(v), static_cast<std::int32_t>(k), false);
      result.values[v] = static_cast<double>(bfs.order.size() - 1);
    }
  });
  return result;
}

CentralityResult stress_centrality(const Graph& g, std::size_t workers) {
  return {Measure::stress, 0, sweep_all_sources(g, Accumulation::stress, workers)};
}

CentralityResult betweenness_centrality(const Graph& g, std::size_t workers) {
  return {Measure::betweenness, 0, sweep_all_sources(g, Accumulation::betweenness, workers)};
}

CentralityResult restricted_stress(const Graph& g, std::uint32_t delta, std::size_t workers) {
  if (delta == 0) throw DomainError("delta must be at least 1");
  const std::size_t n = g.node_count();
  const auto depth = static_cast<std::int32_t>(delta);
  CentralityResult result{Measure::restricted_stress, delta, std::vector<double>(n, 0.0)};
  const BatchPlan plan = BatchPlan::for_items(n, 256, 16);
  run_batches(plan.batch_count(), workers, [&](std::size_t b) {
    LimitedBfs ball(n);   // around v: hop distance and path count to v
    LimitedBfs probe(n);  // around each endpoint s
    std::vector<NodeId> members;
    for (std::size_t vi = plan.begin(b); vi < plan.end(b); ++vi) {
      const auto v = static_cast<NodeId>(vi);
      ball.run(g, v, depth, true);
      members.assign(ball.order.begin() + 1, ball.order.end());
      double total = 0.0;
      for (NodeId s : members) {
        const std::int32_t ds = ball.distance[s];
        // d(s, t) <= d(s, v) + d(v, t) <= ds + delta, so this depth reaches
        // every member t.
        probe.run(g, s, ds + depth, false);
        for (NodeId t : members) {
          if (t == s) continue;
          if (probe.distance[t] == ds + ball.distance[t])
            total += ball.sigma[s] * ball.sigma[t];
        }
      }
      result.values[v] = total;
    }
  });
  return result;
}

std::vector<std::uint64_t> stress1_counts(const Graph& g, std::size_t workers) {
  std::vector<std::uint64_t> counts(g.node_count(), 0);
  for_each_node(g.node_count(), workers, [&](NodeId v) {
    const auto adj = g.neighbors(v);
    std::uint64_t linked = 0;
    for (NodeId s : adj) {
      // Neighbors of s above s that are also neighbors of v: each edge once.
      const auto ns = g.neighbors(s);
      const auto from = std::upper_bound(ns.begin(), ns.end(), s);
      const auto after = std::upper_bound(adj.begin(), adj.end(), s);
      linked += count_common({from, ns.end()}, {after, adj.end()});
    }
    const std::uint64_t d = adj.size();
    counts[v] = d * (d - (d > 0 ? 1 : 0)) / 2 - linked;
  });
  return counts;
}

CentralityResult stress1(const Graph& g, std::size_t workers) {
  const auto counts = stress1_counts(g, workers);
  CentralityResult result{Measure::stress1, 1, std::vector<double>(counts.size())};
  std::transform(counts.begin(), counts.end(), result.values.begin(),
                 [](std::uint64_t c) { return static_cast<double>(c); });
  return result;
}

double normalized_st_value(std::uint64_t stress1, std::size_t degree) {
  if (degree <= 1) return 0.0;
  const double d = static_cast<double>(degree);
  return 2.0 * static_cast<double>(stress1) / (d * (d - 1.0));
}

CentralityResult normalized_st(const Graph& g, std::size_t workers) {
  const auto counts = stress1_counts(g, workers);
  CentralityResult result{Measure::normalized_st, 0, std::vector<double>(counts.size())};
  for (NodeId v = 0; v < counts.size(); ++v)
    result.values[v] = normalized_st_value(counts[v], g.degree(v));
  return result;
}

void write_centrality_csv(std::ostream& out, const CentralityResult& result) {
  out << "# measure=" << measure_name(result.measure);
  if (result.measure == Measure::khop) out << " k=" << result.parameter;
  if (result.measure == Measure::restricted_stress) out << " delta=" << result.parameter;
  out << '\n' << "node_id,value\n";
  for (std::size_t v = 0; v < result.values.size(); ++v)
    out << v << ',' << format_real(result.values[v]) << '\n';
}

CentralityResult read_centrality_csv(std::istream& in) {
  LineReader reader(in);
  auto header = reader.require("CSV header \"node_id,value\"", true);
  if (header.size() != 2 || header[0] != "node_id" || header[1] != "value")
    throw ParseError(reader.line(), "expected header \"node_id,value\"");

  CentralityResult result;
  while (auto row = reader.next(true)) {
    expect_fields(*row, 2, reader.line(), "row \"node_id,value\"");
    if (parse_count((*row)[0], reader.line()) != result.values.size())
      throw ParseError(reader.line(), "node ids must be consecutive from 0");
    result.values.push_back(parse_real((*row)[1], reader.line()));
  }

  for (const std::string& comment : reader.comments()) {
    std::string_view c(comment);
    const auto pos = c.find("measure=");
    if (pos == std::string_view::npos) continue;
    auto name = c.substr(pos + 8);
    name = name.substr(0, name.find(' '));
    for (Measure m : {Measure::khop, Measure::stress, Measure::betweenness,
                      Measure::restricted_stress, Measure::stress1, Measure::normalized_st}) {
      if (measure_name(m) == name) result.measure = m;
    }
    for (std::string_view key : {"k=", "delta="}) {
      const auto kp = c.find(std::string(" ") + std::string(key));
      if (kp != std::string_view::npos) {
        auto value = c.substr(kp + 1 + key.size());
        value = value.substr(0, value.find(' '));
        result.parameter = static_cast<std::uint32_t>(parse_count(value, 0));
      }
    }
  }
  return result;
}

}  // namespace geonet
