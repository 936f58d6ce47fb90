#pragma once

#include <span>
#include <string>
#include <vector>

#include "critdata/graph.hpp"

namespace critdata {

/// Nonempty set of nodes of one graph into which tracking transactions are
/// injected. Members are kept sorted by node index, without duplicates.
class SeedSet {
 public:
  /// Throws GraphError for an empty list, unknown or repeated ids.
  static SeedSet from_ids(const Graph& g, std::span<const std::string> ids);
  /// Throws GraphError for an empty list, out-of-range or repeated indices.
  static SeedSet from_indices(const Graph& g, std::vector<NodeIndex> indices);
  /// `members[i]` selects node i; size must equal the node count.
  static SeedSet from_membership(const Graph& g, const std::vector<bool>& members);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<NodeIndex>& nodes() const noexcept { return nodes_; }
  bool contains(NodeIndex i) const;

  std::vector<std::string> ids(const Graph& g) const;
  /// Comma-joined ids, e.g. "1,4,6".
  std::string to_string(const Graph& g) const;

  friend bool operator==(const SeedSet&, const SeedSet&) = default;

 private:
  explicit SeedSet(std::vector<NodeIndex> nodes) : nodes_(std::move(nodes)) {}
  std::vector<NodeIndex> nodes_;
};

/// Node and edge sets reached by propagation, both sorted ascending.
struct SoiledSegment {
  std::vector<NodeIndex> nodes;
  std::vector<std::size_t> edges;
};

struct SoiledReport {
  SoiledSegment segment;
  double soiled = 0.0;
  double clean = 1.0;
  MeasureMode mode = MeasureMode::kNode;
};

/// Forward reachability closure of `seeds` along directed edges. An edge is
/// soiled iff its source node is soiled; each node and edge appears once.
SoiledSegment propagate(const Graph& g, const SeedSet& seeds);

/// Soiled weight over total weight for the chosen mode. Edge mode on an
/// edgeless graph throws GraphError.
double soiled_measure(const Graph& g, const SoiledSegment& segment, MeasureMode mode);

/// propagate + soiled_measure, with clean = 1 - soiled.
SoiledReport soil(const Graph& g, const SeedSet& seeds, MeasureMode mode);

/// Repeated soiled-measure evaluation against one graph with reused scratch
/// buffers. Not thread-safe; use one instance per worker.
class TaintPropagator {
 public:
  TaintPropagator(const Graph& g, MeasureMode mode);

  double measure(std::span<const NodeIndex> seeds);

 private:
  const Graph* graph_;
  MeasureMode mode_;
  double total_;
  std::vector<char> marked_;
  std::vector<NodeIndex> stack_;
  std::vector<NodeIndex> touched_;
  std::vector<std::size_t> edges_;
};

}  // namespace critdata
