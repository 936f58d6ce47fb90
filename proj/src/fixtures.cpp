#include "critdata/fixtures.hpp"

#include <fmt/format.h>

#include "critdata/constraints.hpp"
#include "critdata/report.hpp"
#include "critdata/taint.hpp"

namespace critdata {

std::string_view example_graph_text() {
  return R"(# Seven-node example: components {1,2,3,4,5} and {6,7}
node 1
node 2
node 3
node 4
node 5
node 6
node 7
edge 1 2
edge 1 3
edge 2 5
edge 3 5
edge 4 3
edge 6 7
)";
}

Graph example_graph() { return parse_graph(example_graph_text()); }

CostSpec unit_beta_spec() { return CostSpec{}; }

CostSpec inverse_beta_spec() {
  CostSpec spec;
  spec.beta = CoefficientFn::over_n(2.0);
  return spec;
}

CostSpec same_component_spec() {
  CostSpec spec;
  spec.gates.push_back({"same-component", 1.0});
  return spec;
}

namespace {

using SeedList = std::vector<std::vector<std::string>>;

const SeedList& ungated_rows() {
  static const SeedList rows{{"1", "6"}, {"3", "5"}, {"2", "4", "7"}, {"2", "6"}, {"1", "4", "6"}};
  return rows;
}

const SeedList& gated_rows() {
  static const SeedList rows{{"1", "6"},      {"3", "5"}, {"2", "4", "7"}, {"2", "6"},
                             {"1", "4", "6"}, {"1", "4"}, {"6"},           {"2", "4"}};
  return rows;
}

ExampleTable build_table(const Graph& g, std::string title, std::string formula,
                         const CostSpec& spec, const SeedList& seed_lists, bool show_gate) {
  ExampleTable table{std::move(title), std::move(formula), {}};
  CandidateScorer scorer(g, spec);
  for (const auto& ids : seed_lists) {
    SeedSet seeds = SeedSet::from_ids(g, ids);
    ExampleRow row;
    row.seeds = ids;
    row.soiled_nodes = propagate(g, seeds).nodes.size();
    row.node_count = g.node_count();
    if (show_gate) row.same_component = same_component(g, seeds);
    row.score = scorer.score(seeds);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

std::vector<ExampleTable> example_tables() {
  const Graph g = example_graph();
  return {
      build_table(g, "Cost function with beta=1", "E=S^2+(1-n/N)^2", unit_beta_spec(),
                  ungated_rows(), false),
      build_table(g, "Cost function with beta=2/n", "E=S^2+2/n*(1-n/N)^2",
                  inverse_beta_spec(), ungated_rows(), false),
      build_table(g, "Cost function with same-component constraint", "E=S^2+(1-n/N)^2 AND C1",
                  same_component_spec(), gated_rows(), true),
  };
}

std::string render_tables(const std::vector<ExampleTable>& tables) {
  std::string out;
  for (const ExampleTable& table : tables) {
    if (!out.empty()) out += '\n';
    const bool gated = !table.rows.empty() && table.rows.front().same_component.has_value();
    out += fmt::format("{}: {}\n", table.title, table.formula);
    out += gated ? "serial\tseeds\tC1\tS\tclean\tE\n" : "serial\tseeds\tS\tclean\tE\n";
    std::size_t serial = 1;
    for (const ExampleRow& row : table.rows) {
      out += fmt::format("{}\t{}\t", serial++, fmt::join(row.seeds, ","));
      if (gated) out += fmt::format("{}\t", *row.same_component == 1.0 ? 1 : 0);
      out += fmt::format("{}/{}\t{}/{}\t", row.soiled_nodes, row.node_count,
                         row.node_count - row.soiled_nodes, row.node_count);
      out += row.score.defined() ? format_fixed4(*row.score.value) : std::string("-");
      out += '\n';
    }
  }
  return out;
}

}  // namespace critdata
