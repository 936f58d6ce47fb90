// critdata: critical node subsets of directed weighted graphs.
//
//   critdata analyze --graph g.txt [--beta-over-n 2] [--gate same-component]
//   critdata tables
//   critdata ingest --log log.csv --out g.txt
//   critdata gen-log --nodes 10 --transactions 1000 --rng-seed 1 --out log.csv

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "critdata/cost.hpp"
#include "critdata/fixtures.hpp"
#include "critdata/graph.hpp"
#include "critdata/ingest.hpp"
#include "critdata/optimize.hpp"
#include "critdata/report.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInfeasible = 2;

struct AnalyzeArgs {
  std::string graph_path;
  std::string cost_path;
  std::optional<double> beta_const;
  std::optional<double> beta_over_n;
  std::string measure = "node";
  std::string optimizer;
  std::vector<std::string> gates;
  std::vector<std::string> penalties;
  std::uint64_t rng_seed = 0;
  std::size_t top = 10;
  std::string format = "tsv";
  std::size_t workers = 1;
  std::size_t restarts = critdata::AnnealingSchedule{}.restarts;
  std::size_t generations = critdata::GaParams{}.generations;
  std::size_t population = critdata::GaParams{}.population_size;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw critdata::Error(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw critdata::Error(fmt::format("cannot write '{}'", path));
  out << body;
}

// `<id>` or `<id>@<tau>`.
critdata::Gate parse_gate_flag(const std::string& flag) {
  auto at = flag.rfind('@');
  if (at == std::string::npos) return {flag, 1.0};
  double tau = 0;
  try {
    tau = std::stod(flag.substr(at + 1));
  } catch (const std::exception&) {
    throw critdata::CostError(fmt::format("bad gate threshold in '{}'", flag));
  }
  return {flag.substr(0, at), tau};
}

// `<id>:<eps>`; the id itself may contain colons.
critdata::Penalty parse_penalty_flag(const std::string& flag) {
  auto colon = flag.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw critdata::CostError(fmt::format("penalty '{}' must be <constraint-id>:<eps>", flag));
  }
  double eps = 0;
  try {
    std::size_t used = 0;
    const std::string number = flag.substr(colon + 1);
    eps = std::stod(number, &used);
    if (used != number.size()) throw std::invalid_argument(number);
  } catch (const std::exception&) {
    throw critdata::CostError(fmt::format("bad epsilon in penalty '{}'", flag));
  }
  return {flag.substr(0, colon), eps};
}

critdata::CostSpec cost_from_args(const AnalyzeArgs& args, const CLI::App& cmd) {
  const bool inline_flags = args.beta_const || args.beta_over_n || !args.gates.empty() ||
                            !args.penalties.empty() || cmd.count("--measure") > 0;
  if (!args.cost_path.empty()) {
    if (inline_flags) {
      std::cerr << "warning: --cost given; inline cost flags are ignored\n";
    }
    return critdata::load_cost_spec_file(args.cost_path);
  }
  critdata::CostSpec spec;
  if (args.beta_const) spec.beta = critdata::CoefficientFn::constant(*args.beta_const);
  if (args.beta_over_n) spec.beta = critdata::CoefficientFn::over_n(*args.beta_over_n);
  spec.measure = *critdata::parse_measure_mode(args.measure);
  for (const auto& g : args.gates) spec.gates.push_back(parse_gate_flag(g));
  for (const auto& p : args.penalties) spec.penalties.push_back(parse_penalty_flag(p));
  critdata::validate(spec);
  return spec;
}

int run_analyze(const AnalyzeArgs& args, const CLI::App& cmd) {
  const critdata::Graph graph = critdata::load_graph_file(args.graph_path);
  const critdata::CostSpec spec = cost_from_args(args, cmd);

  critdata::SearchOptions options;
  options.top_k = args.top;
  options.workers = args.workers;

  critdata::Optimizer optimizer = graph.node_count() <= options.enumeration_cap
                                      ? critdata::Optimizer::kExhaustive
                                      : critdata::Optimizer::kAnnealing;
  if (!args.optimizer.empty()) optimizer = *critdata::parse_optimizer(args.optimizer);

  auto search = [&]() -> critdata::SearchResult {
    switch (optimizer) {
      case critdata::Optimizer::kAnnealing: {
        critdata::AnnealingSchedule schedule;
        schedule.restarts = args.restarts;
        return critdata::anneal(graph, spec, schedule, args.rng_seed, options);
      }
      case critdata::Optimizer::kGenetic: {
        critdata::GaParams params;
        params.generations = args.generations;
        params.population_size = args.population;
        return critdata::evolve(graph, spec, params, args.rng_seed, options);
      }
      case critdata::Optimizer::kExhaustive:
        break;
    }
    return critdata::exhaustive_search(graph, spec, options);
  };
  const critdata::SearchResult result = search();

  if (args.format == "json") {
    std::cout << critdata::to_json(graph, result).dump(2) << '\n';
  } else {
    std::cout << critdata::render_tsv(graph, result);
  }
  return 0;
}

int run_ingest(const std::string& log_path, const std::string& out_path) {
  auto records = critdata::parse_log_csv(read_file(log_path));
  const critdata::Graph graph = critdata::build_from_log(records);
  write_output(out_path, critdata::serialize_graph(graph));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical node subsets of directed weighted graphs via taint propagation"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "Rank seed subsets of a graph by cost");
  cmd_analyze->add_option("--graph", analyze.graph_path, "Graph file")->required();
  cmd_analyze->add_option("--cost", analyze.cost_path, "Cost config file");
  auto* beta_const =
      cmd_analyze->add_option("--beta-const", analyze.beta_const, "Constant beta");
  auto* beta_over_n =
      cmd_analyze->add_option("--beta-over-n", analyze.beta_over_n, "beta(n) = X / n");
  beta_const->excludes(beta_over_n);
  cmd_analyze->add_option("--measure", analyze.measure, "Soiled measure over nodes or edges")
      ->check(CLI::IsMember({"node", "edge"}));
  cmd_analyze->add_option("--optimizer", analyze.optimizer,
                          "exhaustive | sa | ga (default: exhaustive when N <= 22, else sa)")
      ->check(CLI::IsMember({"exhaustive", "sa", "ga"}));
  cmd_analyze->add_option("--gate", analyze.gates, "Gate constraint id, optionally ID@tau");
  cmd_analyze->add_option("--penalty", analyze.penalties, "Penalty constraint ID:EPS");
  cmd_analyze->add_option("--rng-seed", analyze.rng_seed, "Random seed");
  cmd_analyze->add_option("--top", analyze.top, "Number of ranked candidates")
      ->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--format", analyze.format, "tsv | json")
      ->check(CLI::IsMember({"tsv", "json"}));
  cmd_analyze->add_option("--workers", analyze.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--restarts", analyze.restarts, "Annealing restarts")
      ->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--generations", analyze.generations, "GA generations")
      ->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--population", analyze.population, "GA population size");

  app.add_subcommand("tables", "Recompute the worked-example cost tables");

  std::string log_path, graph_out;
  auto* cmd_ingest = app.add_subcommand("ingest", "Build a graph file from a transaction log");
  cmd_ingest->add_option("--log", log_path, "Log CSV (src,dst[,count])")->required();
  cmd_ingest->add_option("--out", graph_out, "Output graph file (default stdout)");

  std::size_t gen_nodes = 0, gen_transactions = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* cmd_genlog = app.add_subcommand("gen-log", "Generate a synthetic transaction log");
  cmd_genlog->add_option("--nodes", gen_nodes, "Element count (>= 2)")->required();
  cmd_genlog->add_option("--transactions", gen_transactions, "Record count (>= 1)")
      ->required();
  cmd_genlog->add_option("--rng-seed", gen_seed, "Random seed");
  cmd_genlog->add_option("--out", gen_out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitFailure;
  }

  try {
    if (cmd_analyze->parsed()) return run_analyze(analyze, *cmd_analyze);
    if (app.got_subcommand("tables")) {
      std::cout << critdata::render_tables(critdata::example_tables());
      return 0;
    }
    if (cmd_ingest->parsed()) return run_ingest(log_path, graph_out);
    if (cmd_genlog->parsed()) {
      auto records = critdata::generate_log(gen_nodes, gen_transactions, gen_seed);
      write_output(gen_out, critdata::write_log_csv(records));
      return 0;
    }
  } catch (const critdata::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
