#include <doctest.h>

#include <random>

#include "critdata/fixtures.hpp"
#include "critdata/taint.hpp"
#include "oracles.hpp"

using namespace critdata;

namespace {

std::vector<std::string> soiled_ids(const Graph& g, std::vector<std::string> seeds) {
  auto seg = propagate(g, SeedSet::from_ids(g, seeds));
  std::vector<std::string> out;
  for (NodeIndex v : seg.nodes) out.push_back(g.node(v).id);
  return out;
}

double node_measure(const Graph& g, std::vector<std::string> seeds) {
  return soil(g, SeedSet::from_ids(g, seeds), MeasureMode::kNode).soiled;
}

}  // namespace

TEST_CASE("seed set validation") {
  Graph g = example_graph();
  CHECK_THROWS_AS(SeedSet::from_ids(g, std::vector<std::string>{}), GraphError);
  CHECK_THROWS_AS(SeedSet::from_ids(g, std::vector<std::string>{"9"}), GraphError);
  CHECK_THROWS_AS(SeedSet::from_ids(g, std::vector<std::string>{"1", "1"}), GraphError);
  CHECK_THROWS_AS(SeedSet::from_indices(g, {7}), GraphError);
  CHECK_THROWS_AS(SeedSet::from_membership(g, std::vector<bool>(7, false)), GraphError);
  auto s = SeedSet::from_ids(g, std::vector<std::string>{"6", "1", "4"});
  CHECK(s.to_string(g) == "1,4,6");
  CHECK(s.size() == 3);
}

TEST_CASE("propagation on the example graph") {
  Graph g = example_graph();
  CHECK(soiled_ids(g, {"1", "4", "6"}) ==
        std::vector<std::string>{"1", "2", "3", "4", "5", "6", "7"});
  CHECK(soiled_ids(g, {"3", "5"}) == std::vector<std::string>{"3", "5"});
  CHECK(soiled_ids(g, {"1", "2", "3", "4", "5", "6", "7"}).size() == 7);
}

TEST_CASE("node measures of the worked example seed sets") {
  Graph g = example_graph();
  CHECK(node_measure(g, {"1", "6"}) == doctest::Approx(6.0 / 7).epsilon(1e-15));
  CHECK(node_measure(g, {"2", "6"}) == doctest::Approx(4.0 / 7).epsilon(1e-15));
  CHECK(node_measure(g, {"1", "4", "6"}) == 1.0);
}

TEST_CASE("cycle edges are counted once") {
  Graph g = parse_graph("node a\nnode b\nnode c\nedge a b\nedge b c\nedge c a\n");
  auto report = soil(g, SeedSet::from_ids(g, std::vector<std::string>{"a"}), MeasureMode::kEdge);
  CHECK(report.segment.edges.size() == 3);
  CHECK(report.soiled == 1.0);
  CHECK(report.clean == 0.0);
}

TEST_CASE("edges are soiled by their source only") {
  Graph g = parse_graph("node a\nnode b\nnode c\nedge a b 3\nedge c b 1\n");
  auto report = soil(g, SeedSet::from_ids(g, std::vector<std::string>{"a"}), MeasureMode::kEdge);
  CHECK(report.segment.edges == std::vector<std::size_t>{0});
  CHECK(report.soiled == doctest::Approx(0.75));
  CHECK(report.clean == 1.0 - report.soiled);
}

TEST_CASE("edge mode needs edges") {
  Graph g = parse_graph("node a\n");
  auto seeds = SeedSet::from_ids(g, std::vector<std::string>{"a"});
  CHECK_THROWS_AS(soil(g, seeds, MeasureMode::kEdge), GraphError);
  CHECK_THROWS_AS(TaintPropagator(g, MeasureMode::kEdge), GraphError);
}

TEST_CASE("propagator agrees bit for bit with soil") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = testing::random_graph(rng, 1 + rng() % 10, 0.2);
    auto bits = testing::random_members(rng, g.node_count());
    SeedSet seeds = SeedSet::from_membership(g, bits);
    TaintPropagator node_prop(g, MeasureMode::kNode);
    CHECK(node_prop.measure(seeds.nodes()) == soil(g, seeds, MeasureMode::kNode).soiled);
    if (g.edge_count() > 0) {
      TaintPropagator edge_prop(g, MeasureMode::kEdge);
      CHECK(edge_prop.measure(seeds.nodes()) == soil(g, seeds, MeasureMode::kEdge).soiled);
      // Reuse must not leak marks between calls.
      CHECK(edge_prop.measure(seeds.nodes()) == soil(g, seeds, MeasureMode::kEdge).soiled);
    }
  }
}

TEST_CASE("soiled set is forward closed and contains the seeds") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = testing::random_graph(rng, 1 + rng() % 10, 0.2);
    SeedSet seeds = SeedSet::from_membership(g, testing::random_members(rng, g.node_count()));
    auto seg = propagate(g, seeds);
    std::vector<bool> in(g.node_count(), false);
    for (NodeIndex v : seg.nodes) in[v] = true;
    for (NodeIndex s : seeds.nodes()) CHECK(in[s]);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Edge& edge = g.edges()[e];
      if (in[edge.source]) CHECK(in[edge.target]);
      const bool listed = std::binary_search(seg.edges.begin(), seg.edges.end(), e);
      CHECK(listed == in[edge.source]);
    }
  }
}

TEST_CASE("absorbing a reachable node changes nothing") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = testing::random_graph(rng, 2 + rng() % 9, 0.25);
    SeedSet seeds = SeedSet::from_membership(g, testing::random_members(rng, g.node_count()));
    auto before = soil(g, seeds, MeasureMode::kNode);
    std::vector<NodeIndex> extra = seeds.nodes();
    for (NodeIndex v : before.segment.nodes) {
      if (!seeds.contains(v)) {
        extra.push_back(v);
        break;
      }
    }
    auto after = soil(g, SeedSet::from_indices(g, extra), MeasureMode::kNode);
    CHECK(after.segment.nodes == before.segment.nodes);
    CHECK(after.segment.edges == before.segment.edges);
    CHECK(after.soiled == before.soiled);
  }
}
