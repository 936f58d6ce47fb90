#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "critdata/cost.hpp"
#include "critdata/graph.hpp"

namespace critdata {

/// Seven unit-weight nodes 1..7 with edges 1->2, 1->3, 2->5, 3->5, 4->3, 6->7.
/// Weak components are {1,2,3,4,5} and {6,7}.
std::string_view example_graph_text();
Graph example_graph();

/// One row of a worked-example table.
struct ExampleRow {
  std::vector<std::string> seeds;
  std::size_t soiled_nodes = 0;
  std::size_t node_count = 0;
  /// Same-component degree; present only for the gated table.
  std::optional<double> same_component;
  Score score;
};

struct ExampleTable {
  std::string title;
  std::string formula;
  std::vector<ExampleRow> rows;
};

/// Cost specs of the worked example.
CostSpec unit_beta_spec();      // S^2 + (1 - n/N)^2
CostSpec inverse_beta_spec();   // S^2 + (2/n)(1 - n/N)^2
CostSpec same_component_spec(); // unit beta, gated on same-component

/// Recomputes the three worked-example tables on example_graph().
std::vector<ExampleTable> example_tables();

/// Text rendering; gate-undefined cells print "-".
std::string render_tables(const std::vector<ExampleTable>& tables);

}  // namespace critdata
