#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "critdata/constraints.hpp"
#include "critdata/graph.hpp"
#include "critdata/taint.hpp"

namespace critdata {

class CostError : public Error {
 public:
  using Error::Error;
};

/// Coefficient as a function of the seed count n: either a constant c or c/n.
struct CoefficientFn {
  enum class Form { kConstant, kOverN };

  Form form = Form::kConstant;
  double c = 1.0;

  static CoefficientFn constant(double c) { return {Form::kConstant, c}; }
  static CoefficientFn over_n(double c) { return {Form::kOverN, c}; }

  double operator()(std::size_t n) const;

  friend bool operator==(const CoefficientFn&, const CoefficientFn&) = default;
};

/// Additive term epsilon * C(seeds).
struct Penalty {
  std::string constraint_id;
  double epsilon = 1.0;

  friend bool operator==(const Penalty&, const Penalty&) = default;
};

/// AND-composed constraint; the score is undefined when the composed degree
/// falls below `tau`.
struct Gate {
  std::string constraint_id;
  double tau = 1.0;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Cost = alpha(n) S^2 + beta(n) (gamma(n) - delta(n) n/N)^2 + sum eps_k C_k,
/// defined only while every gate holds. The defaults give S^2 + (1 - n/N)^2.
struct CostSpec {
  CoefficientFn alpha;
  CoefficientFn beta;
  CoefficientFn gamma;
  CoefficientFn delta;
  std::vector<Penalty> penalties;
  std::vector<Gate> gates;
  MeasureMode measure = MeasureMode::kNode;

  friend bool operator==(const CostSpec&, const CostSpec&) = default;
};

/// Checks tau ranges and that every referenced constraint id resolves.
void validate(const CostSpec& spec,
              const ConstraintRegistry& registry = ConstraintRegistry::builtin());

/// Key-value config, one assignment per line, `#` comments:
///   alpha = const 1
///   beta = inv 2            (2 / n)
///   gate = same-component tau=1
///   penalty = forbid:6 eps=0.5
///   measure = node
CostSpec parse_cost_spec(std::string_view text,
                         const ConstraintRegistry& registry = ConstraintRegistry::builtin());
CostSpec load_cost_spec_file(const std::string& path,
                             const ConstraintRegistry& registry = ConstraintRegistry::builtin());

struct Score {
  enum class Status { kDefined, kGateUndefined };

  Status status = Status::kDefined;
  std::optional<double> value;
  double soiled = 0.0;
  std::size_t n = 0;
  double gate_degree = 1.0;

  bool defined() const noexcept { return status == Status::kDefined; }
};

/// S^2 + beta(n) (1 - n/N)^2. Requires 1 <= n <= N.
double basic_cost(double soiled, std::size_t n, std::size_t node_count,
                  const CoefficientFn& beta);

/// `constraint_values` is aligned with spec.penalties.
double generalized_cost(double soiled, std::size_t n, std::size_t node_count,
                        const CostSpec& spec, std::span<const double> constraint_values);

/// Min-composes `gate_degrees` (aligned with spec.gates) and returns a defined
/// score iff the composed degree reaches every gate's tau. With no gates the
/// degree is 1.
Score gated_cost(double soiled, std::size_t n, std::size_t node_count, const CostSpec& spec,
                 std::span<const double> gate_degrees,
                 std::span<const double> constraint_values = {});

/// Binds a graph and a cost spec and scores seed sets end to end: taint
/// propagation, constraint evaluation, gated cost. Holds scratch state, so
/// give each worker its own copy.
class CandidateScorer {
 public:
  CandidateScorer(const Graph& g, CostSpec spec,
                  const ConstraintRegistry& registry = ConstraintRegistry::builtin());

  Score score(const SeedSet& seeds);

  const Graph& graph() const noexcept { return *graph_; }
  const CostSpec& spec() const noexcept { return spec_; }

 private:
  const Graph* graph_;
  CostSpec spec_;
  std::vector<ConstraintEvaluator> penalty_evaluators_;
  std::vector<ConstraintEvaluator> gate_evaluators_;
  TaintPropagator propagator_;
  std::vector<double> penalty_values_;
  std::vector<double> gate_values_;
};

}  // namespace critdata
