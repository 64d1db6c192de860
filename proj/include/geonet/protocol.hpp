#pragma once

// Synchronous round-based simulation of distributed boundary recognition:
// leader election, BFS tree, degree-histogram convergecast, threshold flood,
// neighbor-list exchange with local classification, and an optional
// neighborhood filter.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geonet/graph.hpp"
#include "geonet/netgen.hpp"

namespace geonet {

enum class Classification : std::uint8_t { undecided, boundary, interior };

std::string classification_name(Classification c);

enum class Phase : std::uint8_t { election, tree, convergecast, estimate, local_stress, filter };
inline constexpr std::size_t phase_count = 6;

std::string phase_name(Phase p);

// Buckets for degrees 0..cap plus one overflow bucket.
class DegreeHistogram {
 public:
  explicit DegreeHistogram(std::uint32_t cap = 1024);

  void add(std::size_t degree, std::uint64_t count = 1);
  // Throws Incompatible when caps differ.
  void merge(const DegreeHistogram& other);

  std::uint32_t cap() const { return cap_; }
  std::uint64_t count(std::size_t degree) const;
  std::uint64_t overflow() const { return buckets_.back(); }
  std::uint64_t total() const;
  // Wire size of the sparse encoding.
  std::size_t nonzero_buckets() const;

  friend bool operator==(const DegreeHistogram&, const DegreeHistogram&) = default;

 private:
  std::uint32_t cap_;
  std::vector<std::uint64_t> buckets_;
};

// Mode of the histogram after a centered moving sum of width 5, taken over
// the observed degree range. Ties go to the higher degree. Overflow is
// ignored; an empty histogram gives 0.
std::uint32_t estimate_interior_degree(const DegreeHistogram& histogram);

// theta * d (d - 1) / 2.
double degree_threshold(double theta, double interior_degree);

// boundary iff stress1 <= threshold. Throws DomainError for threshold < 0.
Classification classify_local(std::uint64_t stress1, double threshold);

struct ProtocolConfig {
  double theta = 1.0 / 3.0;
  bool filter_enabled = false;
  std::uint32_t filter_min_boundary_neighbors = 2;
  // Unset: each component elects its minimum id. Set: this node wins the
  // election in its component.
  std::optional<NodeId> explicit_root;
  std::uint32_t degree_cap = 1024;
  // Keep received neighbor lists in NodeState (memory heavy on large runs).
  bool retain_neighbor_lists = false;
  // Permutes the order in which each round's senders are delivered.
  std::optional<std::uint64_t> delivery_shuffle_seed;

  // Throws InvalidConfig unless 0 < theta < sigma_interior().
  void validate() const;
};

struct NodeState {
  NodeId id = 0;
  std::uint32_t degree = 0;
  NodeId root = 0;
  std::optional<NodeId> parent;
  std::int32_t level = -1;
  std::vector<NodeId> children;
  // Held only while the node aggregates; the root keeps its component's
  // complete histogram.
  std::optional<DegreeHistogram> histogram;
  std::optional<double> estimated_interior_degree;  // root only
  std::optional<double> threshold;
  std::map<NodeId, std::vector<NodeId>> neighbor_lists;
  std::optional<std::uint64_t> stress1;
  Classification classification = Classification::undecided;
  bool filtered = false;
};

struct RoundRecord {
  std::uint32_t round = 0;
  Phase phase = Phase::election;
  std::uint64_t messages = 0;
  std::uint64_t payload_units = 0;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

// A broadcast counts as one message; payload is measured in ids, degree
// buckets, or scalars.
struct ProtocolTrace {
  std::size_t node_count = 0;
  std::size_t component_count = 0;
  std::vector<RoundRecord> rounds;
  std::array<std::uint64_t, phase_count> phase_messages{};
  std::array<std::uint64_t, phase_count> phase_payload{};
  std::uint64_t total_messages = 0;
  std::uint64_t total_payload = 0;
  std::vector<Classification> classifications;

  bool multi_component() const { return component_count > 1; }

  friend bool operator==(const ProtocolTrace&, const ProtocolTrace&) = default;
};

struct ProtocolResult {
  std::vector<NodeState> nodes;
  std::vector<NodeId> roots;  // one per component, ascending
  ProtocolTrace trace;

  const std::vector<Classification>& classifications() const { return trace.classifications; }
};

// Throws DomainError for an empty graph or an explicit root out of range,
// InvalidConfig for a bad configuration.
ProtocolResult run_protocol(const Graph& graph, const ProtocolConfig& config = {});

// Connected components of the subgraph induced by boundary nodes, largest
// first (ties by smallest id). Each strip is sorted ascending.
std::vector<std::vector<NodeId>> boundary_strips(const Graph& graph,
                                                 std::span<const Classification> classes);

struct StripReport {
  std::size_t strip_count = 0;
  std::size_t boundary_nodes = 0;
  // Strips holding at least `major_fraction` of the boundary nodes.
  std::size_t major_count = 0;
  double major_coverage = 0.0;
};

StripReport summarize_strips(const std::vector<std::vector<NodeId>>& strips,
                             double major_fraction = 0.05);

struct MessageSummary {
  std::uint64_t total_messages = 0;
  std::uint64_t total_payload = 0;
  std::size_t rounds = 0;
  std::array<std::uint64_t, phase_count> phase_messages{};
  std::array<std::uint64_t, phase_count> phase_payload{};
  // total_payload / (n log2^2 n); 0 for n <= 1.
  double payload_ratio = 0.0;
};

MessageSummary message_accounting(const ProtocolTrace& trace);

struct ClassificationErrors {
  std::size_t truth_boundary = 0;
  std::size_t truth_interior = 0;
  std::size_t false_negatives = 0;  // truth boundary, classified interior
  std::size_t false_positives = 0;  // truth interior, classified boundary

  double false_negative_rate() const;
  double false_positive_rate() const;
};

ClassificationErrors compare_with_ground_truth(std::span<const Classification> classes,
                                               std::span<const GroundTruthLabel> truth);

// "node_id,x,y,degree,stress1,classification,filtered".
void write_classification_csv(std::ostream& out, const SensorNetwork& network,
                              const ProtocolResult& result);
std::vector<Classification> read_classification_csv(std::istream& in);

// "round,phase,messages,payload_units".
void write_trace_csv(std::ostream& out, const ProtocolTrace& trace);

}  // namespace geonet
