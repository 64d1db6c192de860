#include "geonet/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

#include "geonet/error.hpp"
#include "geonet/rng.hpp"
#include "geonet/text_io.hpp"
#include "geonet/theory.hpp"

namespace geonet {

std::string classification_name(Classification c) {
  switch (c) {
    case Classification::undecided: return "undecided";
    case Classification::boundary: return "boundary";
    case Classification::interior: return "interior";
  }
  return "unknown";
}

std::string phase_name(Phase p) {
  switch (p) {
    case Phase::election: return "election";
    case Phase::tree: return "tree";
    case Phase::convergecast: return "convergecast";
    case Phase::estimate: return "estimate";
    case Phase::local_stress: return "local_stress";
    case Phase::filter: return "filter";
  }
  return "unknown";
}

DegreeHistogram::DegreeHistogram(std::uint32_t cap) : cap_(cap), buckets_(std::size_t{cap} + 2, 0) {}

void DegreeHistogram::add(std::size_t degree, std::uint64_t count) {
  buckets_[std::min<std::size_t>(degree, std::size_t{cap_} + 1)] += count;
}

void DegreeHistogram::merge(const DegreeHistogram& other) {
  if (other.cap_ != cap_) throw Incompatible("degree histograms use different caps");
  for (std::size_t i = 0; i < buckets_.size(); ++i) buckets_[i] += other.buckets_[i];
}

std::uint64_t DegreeHistogram::count(std::size_t degree) const {
  return degree > cap_ ? 0 : buckets_[degree];
}

std::uint64_t DegreeHistogram::total() const {
  return std::accumulate(buckets_.begin(), buckets_.end(), std::uint64_t{0});
}

std::size_t DegreeHistogram::nonzero_buckets() const {
  return static_cast<std::size_t>(
      std::count_if(buckets_.begin(), buckets_.end(), [](std::uint64_t c) { return c != 0; }));
}

std::uint32_t estimate_interior_degree(const DegreeHistogram& histogram) {
  std::optional<std::uint32_t> lo, hi;
  for (std::uint32_t d = 0; d <= histogram.cap(); ++d) {
    if (histogram.count(d) == 0) continue;
    if (!lo) lo = d;
    hi = d;
  }
  if (!lo) return 0;

  std::uint32_t best = *lo;
  std::uint64_t best_sum = 0;
  for (std::uint32_t d = *lo; d <= *hi; ++d) {
    std::uint64_t sum = 0;
    for (std::uint32_t e = d >= 2 ? d - 2 : 0; e <= d + 2; ++e) sum += histogram.count(e);
    if (sum >= best_sum) {
      best_sum = sum;
      best = d;
    }
  }
  return best;
}

double degree_threshold(double theta, double interior_degree) {
  return theta * interior_degree * (interior_degree - 1.0) / 2.0;
}

Classification classify_local(std::uint64_t stress1, double threshold) {
  if (!(threshold >= 0.0)) throw DomainError("threshold must be non-negative");
  return static_cast<double>(stress1) <= threshold ? Classification::boundary
                                                   : Classification::interior;
}

void ProtocolConfig::validate() const {
  const double sigma = sigma_interior();
  if (!(theta > 0.0 && theta < sigma))
    throw InvalidConfig("theta must satisfy 0 < theta < " + format_real(sigma, 10));
  if (degree_cap == 0) throw InvalidConfig("degree cap must be positive");
}

namespace {

class Simulator {
 public:
  Simulator(const Graph& g, const ProtocolConfig& config) : g_(g), config_(config) {
    if (config.delivery_shuffle_seed) shuffle_rng_.seed(*config.delivery_shuffle_seed);
    const std::size_t n = g.node_count();
    result_.nodes.resize(n);
    for (NodeId v = 0; v < n; ++v) {
      result_.nodes[v].id = v;
      result_.nodes[v].degree = static_cast<std::uint32_t>(g.degree(v));
    }
    result_.trace.node_count = n;
  }

  ProtocolResult run() {
    elect_roots();
    build_tree();
    convergecast();
    estimate_and_flood();
    local_stress();
    if (config_.filter_enabled) filter();

    auto& trace = result_.trace;
    trace.classifications.reserve(result_.nodes.size());
    for (const NodeState& node : result_.nodes) trace.classifications.push_back(node.classification);
    for (const RoundRecord& r : trace.rounds) {
      trace.phase_messages[static_cast<std::size_t>(r.phase)] += r.messages;
      trace.phase_payload[static_cast<std::size_t>(r.phase)] += r.payload_units;
      trace.total_messages += r.messages;
      trace.total_payload += r.payload_units;
    }
    return std::move(result_);
  }

 private:
  using Key = std::pair<std::uint8_t, NodeId>;

  void record(Phase phase, std::uint64_t messages, std::uint64_t payload) {
    result_.trace.rounds.push_back({++round_, phase, messages, payload});
  }

  void order_senders(std::vector<NodeId>& senders) {
    if (config_.delivery_shuffle_seed) std::shuffle(senders.begin(), senders.end(), shuffle_rng_);
  }

  Key key_of(NodeId v) const {
    const bool preferred = config_.explicit_root && *config_.explicit_root == v;
    return {preferred ? 0 : 1, v};
  }

  // Phase 1: every node rebroadcasts the smallest key it has heard until no
  // node learns anything new.
  void elect_roots() {
    const std::size_t n = g_.node_count();
    std::vector<Key> best(n), heard(n);
    std::vector<NodeId> senders;
    for (NodeId v = 0; v < n; ++v) {
      best[v] = heard[v] = key_of(v);
      if (g_.degree(v) > 0) senders.push_back(v);
    }
    while (!senders.empty()) {
      order_senders(senders);
      for (NodeId s : senders) {
        for (NodeId w : g_.neighbors(s)) heard[w] = std::min(heard[w], best[s]);
      }
      record(Phase::election, senders.size(), senders.size());
      senders.clear();
      for (NodeId v = 0; v < n; ++v) {
        if (heard[v] < best[v]) {
          best[v] = heard[v];
          senders.push_back(v);
        }
      }
    }
    for (NodeId v = 0; v < n; ++v) {
      result_.nodes[v].root = best[v].second;
      if (best[v].second == v) result_.roots.push_back(v);
    }
    result_.trace.component_count = result_.roots.size();
  }

  // Phase 2: level announcements "(id, level, parent)" spread from each
  // root; a node adopts the smallest-id announcer of the first round it
  // hears one. Parents learn their children from the children's own
  // announcements.
  void build_tree() {
    auto& nodes = result_.nodes;
    std::vector<NodeId> announcers;
    for (NodeId r : result_.roots) {
      nodes[r].level = 0;
      if (g_.degree(r) > 0) announcers.push_back(r);
    }
    constexpr NodeId none = std::numeric_limits<NodeId>::max();
    std::vector<NodeId> candidate(nodes.size(), none);
    while (!announcers.empty()) {
      order_senders(announcers);
      std::vector<NodeId> touched;
      for (NodeId a : announcers) {
        for (NodeId w : g_.neighbors(a)) {
          if (nodes[a].parent == w) nodes[w].children.push_back(a);
          if (nodes[w].level >= 0) continue;
          if (candidate[w] == none) touched.push_back(w);
          candidate[w] = std::min(candidate[w], a);
        }
      }
      record(Phase::tree, announcers.size(), 3 * announcers.size());
      announcers.clear();
      std::sort(touched.begin(), touched.end());
      for (NodeId w : touched) {
        nodes[w].parent = candidate[w];
        nodes[w].level = nodes[candidate[w]].level + 1;
        announcers.push_back(w);
      }
    }
    for (NodeState& node : nodes) std::sort(node.children.begin(), node.children.end());
  }

  // Phase 3: a node forwards its merged subtree histogram once every child
  // has reported.
  void convergecast() {
    auto& nodes = result_.nodes;
    std::vector<std::size_t> pending(nodes.size());
    std::vector<bool> sent(nodes.size(), false);
    for (NodeState& node : nodes) {
      pending[node.id] = node.children.size();
      node.histogram.emplace(config_.degree_cap);
      node.histogram->add(node.degree);
    }
    for (;;) {
      std::vector<NodeId> senders;
      for (const NodeState& node : nodes) {
        if (node.parent && !sent[node.id] && pending[node.id] == 0) senders.push_back(node.id);
      }
      if (senders.empty()) break;
      order_senders(senders);
      std::uint64_t payload = 0;
      for (NodeId s : senders) {
        NodeState& child = nodes[s];
        NodeState& parent = nodes[*child.parent];
        payload += child.histogram->nonzero_buckets();
        parent.histogram->merge(*child.histogram);
        child.histogram.reset();
        --pending[parent.id];
        sent[s] = true;
      }
      record(Phase::convergecast, senders.size(), payload);
    }
  }

  // Phase 4: each root turns its histogram into a threshold and floods it
  // down the tree.
  void estimate_and_flood() {
    auto& nodes = result_.nodes;
    std::vector<NodeId> broadcasters;
    for (NodeId r : result_.roots) {
      NodeState& root = nodes[r];
      const double dhat = estimate_interior_degree(*root.histogram);
      root.estimated_interior_degree = dhat;
      root.threshold = degree_threshold(config_.theta, dhat);
      if (!root.children.empty()) broadcasters.push_back(r);
    }
    while (!broadcasters.empty()) {
      order_senders(broadcasters);
      std::vector<NodeId> next;
      for (NodeId b : broadcasters) {
        for (NodeId w : g_.neighbors(b)) {
          if (nodes[w].parent != b) continue;
          nodes[w].threshold = nodes[b].threshold;
          if (!nodes[w].children.empty()) next.push_back(w);
        }
      }
      record(Phase::estimate, broadcasters.size(), broadcasters.size());
      std::sort(next.begin(), next.end());
      broadcasters = std::move(next);
    }
  }

  // Phase 5: one round of neighbor-list broadcasts. A node counts, for each
  // received list, how many of its own neighbors appear in it; the sum is
  // twice the number of edges among its neighbors.
  void local_stress() {
    auto& nodes = result_.nodes;
    std::vector<std::uint64_t> common(nodes.size(), 0);
    std::vector<NodeId> senders;
    for (NodeId v = 0; v < nodes.size(); ++v) {
      if (g_.degree(v) > 0) senders.push_back(v);
    }
    order_senders(senders);
    std::uint64_t payload = 0;
    for (NodeId s : senders) {
      const auto list = g_.neighbors(s);
      payload += list.size();
      for (NodeId v : list) {
        common[v] += count_common(list, g_.neighbors(v));
        if (config_.retain_neighbor_lists)
          nodes[v].neighbor_lists.emplace(s, std::vector<NodeId>(list.begin(), list.end()));
      }
    }
    record(Phase::local_stress, senders.size(), payload);

    for (NodeState& node : nodes) {
      const std::uint64_t d = node.degree;
      const std::uint64_t pairs = d >= 2 ? d * (d - 1) / 2 : 0;
      node.stress1 = pairs - common[node.id] / 2;
      node.classification = d <= 1 ? Classification::boundary
                                    : classify_local(*node.stress1, *node.threshold);
    }
  }

  // Phase 6: boundary nodes announce themselves; a boundary node with fewer
  // than the configured number of boundary neighbors reverts to interior.
  void filter() {
    auto& nodes = result_.nodes;
    std::vector<std::uint32_t> boundary_neighbors(nodes.size(), 0);
    std::vector<NodeId> senders;
    for (const NodeState& node : nodes) {
      if (node.classification == Classification::boundary && node.degree > 0)
        senders.push_back(node.id);
    }
    order_senders(senders);
    for (NodeId s : senders) {
      for (NodeId w : g_.neighbors(s)) ++boundary_neighbors[w];
    }
    record(Phase::filter, senders.size(), senders.size());
    for (NodeState& node : nodes) {
      if (node.classification == Classification::boundary &&
          boundary_neighbors[node.id] < config_.filter_min_boundary_neighbors) {
        node.classification = Classification::interior;
        node.filtered = true;
      }
    }
  }

  const Graph& g_;
  const ProtocolConfig& config_;
  ProtocolResult result_;
  std::uint32_t round_ = 0;
  Rng shuffle_rng_;
};

}  // namespace

ProtocolResult run_protocol(const Graph& graph, const ProtocolConfig& config) {
  config.validate();
  if (graph.node_count() == 0) throw DomainError("protocol needs a nonempty network");
  if (config.explicit_root && *config.explicit_root >= graph.node_count())
    throw DomainError("explicit root is not a node of the network");
  return Simulator(graph, config).run();
}

std::vector<std::vector<NodeId>> boundary_strips(const Graph& graph,
                                                 std::span<const Classification> classes) {
  if (classes.size() != graph.node_count())
    throw Incompatible("classification count does not match the network");
  std::vector<bool> visited(graph.node_count(), false);
  std::vector<std::vector<NodeId>> strips;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < graph.node_count(); ++s) {
    if (visited[s] || classes[s] != Classification::boundary) continue;
    std::vector<NodeId> strip;
    visited[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      strip.push_back(v);
      for (NodeId w : graph.neighbors(v)) {
        if (!visited[w] && classes[w] == Classification::boundary) {
          visited[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(strip.begin(), strip.end());
    strips.push_back(std::move(strip));
  }
  std::stable_sort(strips.begin(), strips.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return strips;
}

StripReport summarize_strips(const std::vector<std::vector<NodeId>>& strips,
                             double major_fraction) {
  StripReport report;
  report.strip_count = strips.size();
  for (const auto& s : strips) report.boundary_nodes += s.size();
  if (report.boundary_nodes == 0) return report;
  std::size_t covered = 0;
  for (const auto& s : strips) {
    if (static_cast<double>(s.size()) >= major_fraction * static_cast<double>(report.boundary_nodes)) {
      ++report.major_count;
      covered += s.size();
    }
  }
  report.major_coverage = static_cast<double>(covered) / static_cast<double>(report.boundary_nodes);
  return report;
}

MessageSummary message_accounting(const ProtocolTrace& trace) {
  MessageSummary summary;
  summary.total_messages = trace.total_messages;
  summary.total_payload = trace.total_payload;
  summary.rounds = trace.rounds.size();
  summary.phase_messages = trace.phase_messages;
  summary.phase_payload = trace.phase_payload;
  if (trace.node_count > 1) {
    const double n = static_cast<double>(trace.node_count);
    const double lg = std::log2(n);
    summary.payload_ratio = static_cast<double>(trace.total_payload) / (n * lg * lg);
  }
  return summary;
}

double ClassificationErrors::false_negative_rate() const {
  return truth_boundary == 0 ? 0.0
                             : static_cast<double>(false_negatives) / static_cast<double>(truth_boundary);
}

double ClassificationErrors::false_positive_rate() const {
  return truth_interior == 0 ? 0.0
                             : static_cast<double>(false_positives) / static_cast<double>(truth_interior);
}

ClassificationErrors compare_with_ground_truth(std::span<const Classification> classes,
                                               std::span<const GroundTruthLabel> truth) {
  if (classes.size() != truth.size())
    throw Incompatible("classification and ground-truth sizes differ");
  ClassificationErrors errors;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const bool said_boundary = classes[i] == Classification::boundary;
    if (truth[i] == GroundTruthLabel::boundary) {
      ++errors.truth_boundary;
      if (!said_boundary) ++errors.false_negatives;
    } else {
      ++errors.truth_interior;
      if (said_boundary) ++errors.false_positives;
    }
  }
  return errors;
}

void write_classification_csv(std::ostream& out, const SensorNetwork& network,
                              const ProtocolResult& result) {
  if (network.node_count() != result.nodes.size())
    throw Incompatible("protocol result does not match the network");
  out << "node_id,x,y,degree,stress1,classification,filtered\n";
  for (const NodeState& node : result.nodes) {
    const Point p = network.position(node.id);
    out << node.id << ',' << format_real(p.x) << ',' << format_real(p.y) << ',' << node.degree
        << ',' << node.stress1.value_or(0) << ',' << classification_name(node.classification)
        << ',' << (node.filtered ? 1 : 0) << '\n';
  }
}

std::vector<Classification> read_classification_csv(std::istream& in) {
  LineReader reader(in);
  auto header = reader.require("classification CSV header", true);
  if (header.size() != 7 || header[0] != "node_id" || header[5] != "classification")
    throw ParseError(reader.line(),
                     "expected header \"node_id,x,y,degree,stress1,classification,filtered\"");
  std::vector<Classification> classes;
  while (auto row = reader.next(true)) {
    expect_fields(*row, 7, reader.line(), "classification row");
    if (parse_count((*row)[0], reader.line()) != classes.size())
      throw ParseError(reader.line(), "node ids must be consecutive from 0");
    const auto name = (*row)[5];
    if (name == "boundary") classes.push_back(Classification::boundary);
    else if (name == "interior") classes.push_back(Classification::interior);
    else if (name == "undecided") classes.push_back(Classification::undecided);
    else throw ParseError(reader.line(), "unknown classification '" + std::string(name) + "'");
  }
  return classes;
}

void write_trace_csv(std::ostream& out, const ProtocolTrace& trace) {
  out << "round,phase,messages,payload_units\n";
  for (const RoundRecord& r : trace.rounds)
    out << r.round << ',' << phase_name(r.phase) << ',' << r.messages << ',' << r.payload_units << '\n';
}

}  // namespace geonet
