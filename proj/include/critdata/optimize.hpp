#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "critdata/cost.hpp"
#include "critdata/graph.hpp"
#include "critdata/taint.hpp"

namespace critdata {

class SearchError : public Error {
 public:
  using Error::Error;
};

/// No gate-feasible candidate was found.
class InfeasibleError : public SearchError {
 public:
  using SearchError::SearchError;
};

struct Candidate {
  SeedSet seeds;
  Score score;
};

/// Total ranking order over defined candidates of one graph: higher score,
/// then fewer seeds, then the lexicographically smaller sorted id list.
bool ranks_before(const Graph& g, const Candidate& a, const Candidate& b);

enum class Optimizer { kExhaustive, kAnnealing, kGenetic };

std::string_view to_string(Optimizer optimizer);
/// Accepts "exhaustive", "sa" or "ga".
std::optional<Optimizer> parse_optimizer(std::string_view text);

struct AnnealingSchedule {
  double initial_temperature = 1.0;
  double cooling_factor = 0.95;
  std::size_t steps_per_temperature = 50;
  double minimum_temperature = 1e-4;
  std::size_t restarts = 10;

  /// Throws SearchError on out-of-range fields.
  void validate() const;
};

struct GaParams {
  std::size_t population_size = 40;
  std::size_t generations = 100;
  /// Per-bit flip probability; 1/N when unset.
  std::optional<double> mutation_rate;
  double crossover_rate = 0.9;
  std::size_t tournament_size = 3;
  std::size_t elitism_count = 1;
  /// Optional starting individuals (N-bit membership vectors); the rest of
  /// the population is drawn uniformly.
  std::vector<std::vector<bool>> initial_population;

  void validate(std::size_t node_count) const;
};

struct SearchOptions {
  std::size_t top_k = 10;
  /// Worker threads. Results do not depend on this value.
  std::size_t workers = 1;
  /// Largest N accepted by exhaustive_search.
  std::size_t enumeration_cap = 22;
};

struct SearchResult {
  Candidate best;
  /// Best distinct defined candidates seen, in ranking order; ranked[0] == best.
  std::vector<Candidate> ranked;
  std::uint64_t evaluations = 0;
  std::uint64_t rng_seed = 0;
  Optimizer optimizer = Optimizer::kExhaustive;
};

/// Scores all 2^N - 1 nonempty subsets. Throws SearchError when N exceeds the
/// cap and InfeasibleError when every subset is gated out.
SearchResult exhaustive_search(const Graph& g, const CostSpec& spec,
                               const SearchOptions& options = {});

/// Simulated annealing over membership vectors with single-node flip moves.
SearchResult anneal(const Graph& g, const CostSpec& spec, const AnnealingSchedule& schedule,
                    std::uint64_t rng_seed, const SearchOptions& options = {});

/// Generational GA with tournament selection, uniform crossover, per-bit
/// mutation and elitism.
SearchResult evolve(const Graph& g, const CostSpec& spec, const GaParams& params,
                    std::uint64_t rng_seed, const SearchOptions& options = {});

}  // namespace critdata
