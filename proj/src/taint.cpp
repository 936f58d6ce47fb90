#include "critdata/taint.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace critdata {

SeedSet SeedSet::from_ids(const Graph& g, std::span<const std::string> ids) {
  std::vector<NodeIndex> indices;
  indices.reserve(ids.size());
  for (const std::string& id : ids) indices.push_back(g.index_of(id));
  return from_indices(g, std::move(indices));
}

SeedSet SeedSet::from_indices(const Graph& g, std::vector<NodeIndex> indices) {
  if (indices.empty()) throw GraphError("seed set must not be empty");
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw GraphError("seed set contains a repeated node");
  }
  if (indices.back() >= g.node_count()) {
    throw GraphError(fmt::format("seed index {} out of range", indices.back()));
  }
  return SeedSet(std::move(indices));
}

SeedSet SeedSet::from_membership(const Graph& g, const std::vector<bool>& members) {
  if (members.size() != g.node_count()) {
    throw GraphError("membership vector size does not match node count");
  }
  std::vector<NodeIndex> indices;
  for (NodeIndex i = 0; i < members.size(); ++i) {
    if (members[i]) indices.push_back(i);
  }
  return from_indices(g, std::move(indices));
}

bool SeedSet::contains(NodeIndex i) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), i);
}

std::vector<std::string> SeedSet::ids(const Graph& g) const {
  std::vector<std::string> out;
  out.reserve(nodes_.size());
  for (NodeIndex i : nodes_) out.push_back(g.node(i).id);
  return out;
}

std::string SeedSet::to_string(const Graph& g) const {
  return fmt::format("{}", fmt::join(ids(g), ","));
}

SoiledSegment propagate(const Graph& g, const SeedSet& seeds) {
  std::vector<char> marked(g.node_count(), 0);
  std::vector<NodeIndex> stack;
  for (NodeIndex s : seeds.nodes()) {
    if (s >= g.node_count()) throw GraphError("seed not in graph");
    if (!marked[s]) {
      marked[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    NodeIndex v = stack.back();
    stack.pop_back();
    for (std::size_t e : g.out_edges(v)) {
      NodeIndex t = g.edges()[e].target;
      if (!marked[t]) {
        marked[t] = 1;
        stack.push_back(t);
      }
    }
  }

  SoiledSegment segment;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (marked[v]) segment.nodes.push_back(v);
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (marked[g.edges()[e].source]) segment.edges.push_back(e);
  }
  return segment;
}

double soiled_measure(const Graph& g, const SoiledSegment& segment, MeasureMode mode) {
  const double total = total_weight(g, mode);
  double soiled = 0.0;
  if (mode == MeasureMode::kNode) {
    for (NodeIndex v : segment.nodes) soiled += g.node(v).weight;
  } else {
    for (std::size_t e : segment.edges) soiled += g.edges().at(e).weight;
  }
  // Full saturation is reported as exactly 1 regardless of summation order.
  const std::size_t full = mode == MeasureMode::kNode ? g.node_count() : g.edge_count();
  const std::size_t have =
      mode == MeasureMode::kNode ? segment.nodes.size() : segment.edges.size();
  return have == full ? 1.0 : soiled / total;
}

SoiledReport soil(const Graph& g, const SeedSet& seeds, MeasureMode mode) {
  SoiledReport report;
  report.segment = propagate(g, seeds);
  report.soiled = soiled_measure(g, report.segment, mode);
  report.clean = 1.0 - report.soiled;
  report.mode = mode;
  return report;
}

TaintPropagator::TaintPropagator(const Graph& g, MeasureMode mode)
    : graph_(&g), mode_(mode), total_(total_weight(g, mode)), marked_(g.node_count(), 0) {}

double TaintPropagator::measure(std::span<const NodeIndex> seeds) {
  const Graph& g = *graph_;
  touched_.clear();
  for (NodeIndex s : seeds) {
    if (!marked_[s]) {
      marked_[s] = 1;
      stack_.push_back(s);
      touched_.push_back(s);
    }
  }
  edges_.clear();
  while (!stack_.empty()) {
    NodeIndex v = stack_.back();
    stack_.pop_back();
    for (std::size_t e : g.out_edges(v)) {
      const Edge& edge = g.edges()[e];
      if (mode_ == MeasureMode::kEdge) edges_.push_back(e);
      if (!marked_[edge.target]) {
        marked_[edge.target] = 1;
        stack_.push_back(edge.target);
        touched_.push_back(edge.target);
      }
    }
  }
  for (NodeIndex v : touched_) marked_[v] = 0;

  // Sum in ascending index order, matching soiled_measure bit for bit.
  double soiled = 0.0;
  bool saturated = false;
  if (mode_ == MeasureMode::kNode) {
    std::sort(touched_.begin(), touched_.end());
    for (NodeIndex v : touched_) soiled += g.node(v).weight;
    saturated = touched_.size() == g.node_count();
  } else {
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t e : edges_) soiled += g.edges()[e].weight;
    saturated = edges_.size() == g.edge_count();
  }
  return saturated ? 1.0 : soiled / total_;
}

}  // namespace critdata
