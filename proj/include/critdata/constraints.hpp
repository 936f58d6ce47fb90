#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "critdata/graph.hpp"
#include "critdata/taint.hpp"

namespace critdata {

class ConstraintError : public Error {
 public:
  using Error::Error;
};

enum class ConstraintKind { kCrisp, kFuzzy };

/// A named predicate over (graph, seed set). Crisp evaluators return exactly
/// 0 or 1; fuzzy ones return a membership degree in [0, 1]. Evaluation is
/// pure, so one evaluator may be shared across threads.
struct ConstraintEvaluator {
  std::string id;
  ConstraintKind kind = ConstraintKind::kCrisp;
  std::function<double(const Graph&, const SeedSet&)> evaluate;

  double operator()(const Graph& g, const SeedSet& seeds) const { return evaluate(g, seeds); }
};

/// 1 iff every seed lies in the same weak component.
double same_component(const Graph& g, const SeedSet& seeds);

ConstraintEvaluator same_component_constraint();
/// 1 iff min <= n <= max. Requires 1 <= min <= max.
ConstraintEvaluator cardinality_between(std::size_t min, std::size_t max);
/// 1 iff every required id is a seed. Unknown ids throw GraphError when evaluated.
ConstraintEvaluator require_nodes(std::vector<std::string> required);
/// 1 iff no forbidden id is a seed. Unknown ids throw GraphError when evaluated.
ConstraintEvaluator forbid_nodes(std::vector<std::string> forbidden);
/// Fuzzy "the subset is small": max(0, 1 - (n - 1) / scale). Requires scale > 0.
ConstraintEvaluator fuzzy_small_subset(double scale);

/// Maps textual constraint ids to evaluators. An id is `<name>` or
/// `<name>:<argument>`; the factory registered under `name` receives the
/// argument (empty when absent).
class ConstraintRegistry {
 public:
  using Factory = std::function<ConstraintEvaluator(std::string_view argument)>;

  void add(std::string name, Factory factory);
  bool contains(std::string_view id) const;
  /// Throws ConstraintError naming the id when it is unknown or malformed.
  ConstraintEvaluator resolve(std::string_view id) const;

  /// same-component, cardinality:<min>:<max>, require:<id,...>,
  /// forbid:<id,...>, fuzzy-small:<scale>.
  static const ConstraintRegistry& builtin();

 private:
  std::map<std::string, Factory, std::less<>> factories_;
};

}  // namespace critdata
