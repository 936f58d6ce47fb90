#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace critdata {

/// Dense index of a node inside a Graph, in declaration order.
using NodeIndex = std::size_t;

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid graph input. `line()` is 0 when not tied to a file line.
class GraphError : public Error {
 public:
  explicit GraphError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class MeasureMode { kNode, kEdge };

std::string_view to_string(MeasureMode mode);
/// Accepts "node" or "edge".
std::optional<MeasureMode> parse_measure_mode(std::string_view text);

struct Node {
  std::string id;
  double weight = 1.0;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  NodeIndex source = 0;
  NodeIndex target = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Disjoint node sets covering every node; two nodes share a set iff they are
/// connected when edge direction is ignored. Sets are ordered by their
/// smallest member and list members in ascending index order.
struct ComponentPartition {
  std::vector<std::vector<NodeIndex>> components;
  std::vector<std::size_t> component_of;
};

/// Immutable directed weighted graph. Node and edge weights are strictly
/// positive, ids are unique, and at most one edge exists per ordered pair.
/// Self-loops, cycles and disconnected parts are allowed.
class Graph {
 public:
  class Builder {
   public:
    Builder& add_node(std::string id, double weight = 1.0);
    Builder& add_edge(std::string_view source, std::string_view target,
                      double weight = 1.0);
    Graph build() &&;

   private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::set<std::pair<NodeIndex, NodeIndex>> pairs_;
  };

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Node& node(NodeIndex i) const { return nodes_.at(i); }

  std::optional<NodeIndex> find(std::string_view id) const;
  /// Throws GraphError for unknown ids.
  NodeIndex index_of(std::string_view id) const;

  /// Edge indices leaving `i`, in edge declaration order.
  const std::vector<std::size_t>& out_edges(NodeIndex i) const {
    return out_edges_.at(i);
  }

  /// Weak components, computed once at construction.
  const ComponentPartition& components() const noexcept { return components_; }

  /// Same graph with every node and edge weight multiplied by `factor` (> 0).
  Graph scaled(double factor) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  Graph(std::vector<Node> nodes, std::vector<Edge> edges,
        std::unordered_map<std::string, NodeIndex> index);

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<std::size_t>> out_edges_;
  ComponentPartition components_;
};

/// Parses the line-oriented graph format:
///   # comment
///   node <id> [weight]
///   edge <src> <dst> [weight]
/// Errors carry the offending line number.
Graph parse_graph(std::string_view text);

/// Inverse of parse_graph; weights are written in shortest round-trip form.
std::string serialize_graph(const Graph& g);

Graph load_graph_file(const std::string& path);

ComponentPartition weak_components(std::size_t node_count,
                                   const std::vector<Edge>& edges);
inline const ComponentPartition& weak_components(const Graph& g) {
  return g.components();
}

/// Sum of node weights (kNode) or edge weights (kEdge). Edge mode on a graph
/// without edges throws GraphError.
double total_weight(const Graph& g, MeasureMode mode);

}  // namespace critdata
