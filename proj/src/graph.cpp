#include "critdata/graph.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "text.hpp"

namespace critdata {

GraphError::GraphError(const std::string& what, std::size_t line)
    : Error(line == 0 ? what : fmt::format("line {}: {}", line, what)), line_(line) {}

std::string_view to_string(MeasureMode mode) {
  return mode == MeasureMode::kNode ? "node" : "edge";
}

std::optional<MeasureMode> parse_measure_mode(std::string_view text) {
  if (text == "node") return MeasureMode::kNode;
  if (text == "edge") return MeasureMode::kEdge;
  return std::nullopt;
}

namespace {

void check_weight(double w, std::string_view what) {
  if (!std::isfinite(w) || w <= 0.0) {
    throw GraphError(fmt::format("non-positive weight {} on {}", w, what));
  }
}

}  // namespace

Graph::Builder& Graph::Builder::add_node(std::string id, double weight) {
  if (id.empty()) throw GraphError("empty node id");
  if (id.find_first_of(" \t\r\n") != std::string::npos) {
    throw GraphError(fmt::format("node id '{}' contains whitespace", id));
  }
  check_weight(weight, fmt::format("node '{}'", id));
  auto [it, inserted] = index_.emplace(id, nodes_.size());
  if (!inserted) throw GraphError(fmt::format("duplicate node id '{}'", id));
  nodes_.push_back(Node{std::move(id), weight});
  return *this;
}

Graph::Builder& Graph::Builder::add_edge(std::string_view source,
                                         std::string_view target, double weight) {
  auto src = index_.find(std::string(source));
  if (src == index_.end()) {
    throw GraphError(fmt::format("edge endpoint '{}' is not a declared node", source));
  }
  auto dst = index_.find(std::string(target));
  if (dst == index_.end()) {
    throw GraphError(fmt::format("edge endpoint '{}' is not a declared node", target));
  }
  check_weight(weight, fmt::format("edge {} -> {}", source, target));
  if (!pairs_.emplace(src->second, dst->second).second) {
    throw GraphError(fmt::format("duplicate edge {} -> {}", source, target));
  }
  edges_.push_back(Edge{src->second, dst->second, weight});
  return *this;
}

Graph Graph::Builder::build() && {
  return Graph(std::move(nodes_), std::move(edges_), std::move(index_));
}

Graph::Graph(std::vector<Node> nodes, std::vector<Edge> edges,
             std::unordered_map<std::string, NodeIndex> index)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), index_(std::move(index)) {
  out_edges_.resize(nodes_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out_edges_[edges_[e].source].push_back(e);
  }
  components_ = weak_components(nodes_.size(), edges_);
}

std::optional<NodeIndex> Graph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Graph::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw GraphError(fmt::format("unknown node id '{}'", id));
}

Graph Graph::scaled(double factor) const {
  check_weight(factor, "scale factor");
  std::vector<Node> nodes = nodes_;
  std::vector<Edge> edges = edges_;
  for (Node& n : nodes) n.weight *= factor;
  for (Edge& e : edges) e.weight *= factor;
  return Graph(std::move(nodes), std::move(edges), index_);
}

Graph parse_graph(std::string_view text) {
  Graph::Builder builder;
  text::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto fields = text::split_ws(line);
    if (fields.empty() || fields[0].front() == '#') return;
    auto weight_field = [&](std::size_t pos) {
      if (fields.size() <= pos) return 1.0;
      auto w = text::parse_double(fields[pos]);
      if (!w) {
        throw GraphError(fmt::format("malformed weight '{}'", fields[pos]), line_no);
      }
      return *w;
    };
    try {
      if (fields[0] == "node") {
        if (fields.size() < 2 || fields.size() > 3) {
          throw GraphError("expected: node <id> [weight]", line_no);
        }
        builder.add_node(std::string(fields[1]), weight_field(2));
      } else if (fields[0] == "edge") {
        if (fields.size() < 3 || fields.size() > 4) {
          throw GraphError("expected: edge <src> <dst> [weight]", line_no);
        }
        builder.add_edge(fields[1], fields[2], weight_field(3));
      } else {
        throw GraphError(fmt::format("unknown record '{}'", fields[0]), line_no);
      }
    } catch (const GraphError& e) {
      if (e.line() != 0) throw;
      throw GraphError(e.what(), line_no);
    }
  });
  return std::move(builder).build();
}

std::string serialize_graph(const Graph& g) {
  std::string out;
  for (const Node& n : g.nodes()) {
    out += fmt::format("node {} {}\n", n.id, text::format_double(n.weight));
  }
  for (const Edge& e : g.edges()) {
    out += fmt::format("edge {} {} {}\n", g.node(e.source).id, g.node(e.target).id,
                       text::format_double(e.weight));
  }
  return out;
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError(fmt::format("cannot open graph file '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

ComponentPartition weak_components(std::size_t node_count,
                                   const std::vector<Edge>& edges) {
  std::vector<std::size_t> parent(node_count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : edges) {
    std::size_t a = root(e.source);
    std::size_t b = root(e.target);
    // Smaller index wins so each root is its set's minimum.
    if (a < b) parent[b] = a;
    else if (b < a) parent[a] = b;
  }

  ComponentPartition partition;
  partition.component_of.assign(node_count, 0);
  std::vector<std::size_t> slot_of_root(node_count, node_count);
  for (NodeIndex v = 0; v < node_count; ++v) {
    std::size_t r = root(v);
    if (slot_of_root[r] == node_count) {
      slot_of_root[r] = partition.components.size();
      partition.components.emplace_back();
    }
    partition.component_of[v] = slot_of_root[r];
    partition.components[slot_of_root[r]].push_back(v);
  }
  return partition;
}

double total_weight(const Graph& g, MeasureMode mode) {
  double total = 0.0;
  if (mode == MeasureMode::kNode) {
    for (const Node& n : g.nodes()) total += n.weight;
  } else {
    if (g.edge_count() == 0) {
      throw GraphError("edge measure requested on a graph without edges");
    }
    for (const Edge& e : g.edges()) total += e.weight;
  }
  return total;
}

}  // namespace critdata
