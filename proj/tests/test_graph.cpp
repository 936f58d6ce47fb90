#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "critdata/fixtures.hpp"
#include "critdata/graph.hpp"
#include "oracles.hpp"

using namespace critdata;

namespace {

std::vector<std::string> ids_of(const Graph& g, const std::vector<NodeIndex>& members) {
  std::vector<std::string> out;
  for (NodeIndex i : members) out.push_back(g.node(i).id);
  return out;
}

}  // namespace

TEST_CASE("minimal self-loop graph parses with unit weights") {
  Graph g = parse_graph("node 1\nedge 1 1");
  REQUIRE(g.node_count() == 1);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.node(0).weight == 1.0);
  CHECK(g.edges()[0].source == 0);
  CHECK(g.edges()[0].target == 0);
  CHECK(g.edges()[0].weight == 1.0);
}

TEST_CASE("example graph has 7 unit nodes and 6 unit edges") {
  Graph g = example_graph();
  CHECK(g.node_count() == 7);
  CHECK(g.edge_count() == 6);
  for (const Node& n : g.nodes()) CHECK(n.weight == 1.0);
  for (const Edge& e : g.edges()) CHECK(e.weight == 1.0);
}

TEST_CASE("parser accepts comments, tabs and explicit weights") {
  Graph g = parse_graph("# header\n\nnode a 2.5\nnode\tb\nedge a\t b   0.25\n  # indented\n");
  CHECK(g.node(g.index_of("a")).weight == 2.5);
  CHECK(g.node(g.index_of("b")).weight == 1.0);
  CHECK(g.edges()[0].weight == 0.25);
}

TEST_CASE("parser errors carry line numbers") {
  auto line_of = [](std::string_view text) {
    try {
      parse_graph(text);
    } catch (const GraphError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("node 1\nnode 2\nedge 1 2 -0.5") == 3);
  CHECK(line_of("node 1\nnode 1") == 2);
  CHECK(line_of("node 1\nedge 1 9") == 2);
  CHECK(line_of("vertex 1") == 1);
  CHECK(line_of("node 1 abc") == 1);
  CHECK(line_of("node 1 0") == 1);
  CHECK(line_of("node 1\nnode 2\nedge 1 2\nedge 1 2 3") == 4);
  CHECK(line_of("node") == 1);
  CHECK(line_of("node a 1 extra") == 1);

  CHECK_THROWS_WITH_AS(parse_graph("node 1\nnode 2\nedge 1 2 -0.5"),
                       doctest::Contains("non-positive weight"), GraphError);
}

TEST_CASE("builder rejects non-finite weights and whitespace ids") {
  Graph::Builder b;
  CHECK_THROWS_AS(b.add_node("x", std::numeric_limits<double>::infinity()), GraphError);
  CHECK_THROWS_AS(b.add_node("x", std::nan("")), GraphError);
  CHECK_THROWS_AS(b.add_node("a b"), GraphError);
  CHECK_THROWS_AS(b.add_node(""), GraphError);
}

TEST_CASE("weak components of the example graph") {
  Graph g = example_graph();
  const auto& p = weak_components(g);
  REQUIRE(p.components.size() == 2);
  CHECK(ids_of(g, p.components[0]) == std::vector<std::string>{"1", "2", "3", "4", "5"});
  CHECK(ids_of(g, p.components[1]) == std::vector<std::string>{"6", "7"});
}

TEST_CASE("weak components of trivial graphs") {
  Graph single = parse_graph("node x");
  CHECK(weak_components(single).components.size() == 1);
  CHECK(weak_components(single).components[0].size() == 1);

  Graph cycle = parse_graph("node a\nnode b\nedge a b\nedge b a");
  CHECK(weak_components(cycle).components.size() == 1);
  CHECK(weak_components(cycle).components[0].size() == 2);
}

TEST_CASE("total weight") {
  Graph g = example_graph();
  CHECK(total_weight(g, MeasureMode::kNode) == 7.0);
  CHECK(total_weight(g, MeasureMode::kEdge) == 6.0);
  CHECK(total_weight(g.scaled(2.5), MeasureMode::kNode) == doctest::Approx(17.5));
  CHECK(total_weight(g.scaled(2.5), MeasureMode::kEdge) == doctest::Approx(15.0));
  CHECK_THROWS_AS(total_weight(parse_graph("node a"), MeasureMode::kEdge), GraphError);
}

TEST_CASE("serialize/parse round-trips random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = testing::random_graph(rng, 1 + rng() % 10, 0.3);
    Graph back = parse_graph(serialize_graph(g));
    CHECK(back == g);
  }
}

TEST_CASE("weak components ignore edge direction") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = testing::random_graph(rng, 1 + rng() % 10, 0.15, true);
    std::vector<Edge> flipped = g.edges();
    for (Edge& e : flipped) {
      if (rng() & 1U) std::swap(e.source, e.target);
    }
    auto a = weak_components(g);
    auto b = weak_components(g.node_count(), flipped);
    CHECK(a.components == b.components);
    CHECK(a.component_of == b.component_of);
  }
}

TEST_CASE("partition covers nodes disjointly") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = testing::random_graph(rng, 1 + rng() % 10, 0.1, true);
    const auto& p = weak_components(g);
    std::vector<int> seen(g.node_count(), 0);
    for (std::size_t c = 0; c < p.components.size(); ++c) {
      CHECK_FALSE(p.components[c].empty());
      for (NodeIndex v : p.components[c]) {
        ++seen[v];
        CHECK(p.component_of[v] == c);
      }
    }
    for (int s : seen) CHECK(s == 1);
    for (const Edge& e : g.edges()) CHECK(p.component_of[e.source] == p.component_of[e.target]);
  }
}

TEST_CASE("unit-weight node total equals node count") {
  for (std::size_t n = 1; n <= 12; ++n) {
    Graph::Builder b;
    for (std::size_t i = 0; i < n; ++i) b.add_node(std::to_string(i));
    CHECK(total_weight(std::move(b).build(), MeasureMode::kNode) == static_cast<double>(n));
  }
}
