#include <doctest.h>

#include <stdexcept>

#include "geonet/graph.hpp"

using namespace geonet;

TEST_CASE("graph from edges is sorted, symmetric and deduplicated") {
  const std::vector<Edge> edges{{2, 0}, {0, 1}, {1, 0}, {3, 2}};
  const Graph g = Graph::from_edges(5, edges);
  CHECK(g.node_count() == 5);
  CHECK(g.edge_count() == 3);
  CHECK(std::vector<NodeId>(g.neighbors(0).begin(), g.neighbors(0).end()) ==
        std::vector<NodeId>{1, 2});
  CHECK(g.has_edge(2, 3));
  CHECK(g.has_edge(3, 2));
  CHECK_FALSE(g.has_edge(0, 3));
  CHECK(g.degree(4) == 0);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {2, 3}});
}

TEST_CASE("bad graphs are rejected") {
  const std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop), std::invalid_argument);
  const std::vector<Edge> range{{0, 5}};
  CHECK_THROWS_AS(Graph::from_edges(3, range), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_adjacency({{1}, {}}), std::invalid_argument);
}

TEST_CASE("connected components") {
  const std::vector<Edge> edges{{0, 1}, {3, 4}, {4, 5}};
  const Graph g = Graph::from_edges(7, edges);
  const auto comps = connected_components(g);
  REQUIRE(comps.size() == 4);
  CHECK(comps[0] == std::vector<NodeId>{0, 1});
  CHECK(comps[1] == std::vector<NodeId>{2});
  CHECK(comps[2] == std::vector<NodeId>{3, 4, 5});
  CHECK(comps[3] == std::vector<NodeId>{6});
}

TEST_CASE("sorted intersection count") {
  const std::vector<NodeId> a{1, 3, 5, 7}, b{2, 3, 4, 7, 9};
  CHECK(count_common(a, b) == 2);
  CHECK(count_common(a, {}) == 0);
}
