#include "critdata/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <thread>

#include <fmt/format.h>

namespace critdata {

bool ranks_before(const Graph& g, const Candidate& a, const Candidate& b) {
  const double va = *a.score.value;
  const double vb = *b.score.value;
  if (va != vb) return va > vb;
  if (a.seeds.size() != b.seeds.size()) return a.seeds.size() < b.seeds.size();
  auto sorted_ids = [&g](const SeedSet& s) {
    std::vector<std::string_view> ids;
    ids.reserve(s.size());
    for (NodeIndex i : s.nodes()) ids.push_back(g.node(i).id);
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  return sorted_ids(a.seeds) < sorted_ids(b.seeds);
}

std::string_view to_string(Optimizer optimizer) {
  switch (optimizer) {
    case Optimizer::kExhaustive: return "exhaustive";
    case Optimizer::kAnnealing: return "sa";
    case Optimizer::kGenetic: return "ga";
  }
  return "unknown";
}

std::optional<Optimizer> parse_optimizer(std::string_view text) {
  if (text == "exhaustive") return Optimizer::kExhaustive;
  if (text == "sa") return Optimizer::kAnnealing;
  if (text == "ga") return Optimizer::kGenetic;
  return std::nullopt;
}

void AnnealingSchedule::validate() const {
  if (!(initial_temperature > 0.0)) throw SearchError("initial temperature must be positive");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0)) {
    throw SearchError("cooling factor must lie in (0, 1)");
  }
  if (steps_per_temperature < 1) throw SearchError("steps per temperature must be >= 1");
  if (!(minimum_temperature > 0.0)) throw SearchError("minimum temperature must be positive");
  if (restarts < 1) throw SearchError("restarts must be >= 1");
}

void GaParams::validate(std::size_t node_count) const {
  if (population_size < 2) throw SearchError("population size must be >= 2");
  if (generations < 1) throw SearchError("generations must be >= 1");
  if (mutation_rate && !(*mutation_rate > 0.0 && *mutation_rate <= 1.0)) {
    throw SearchError("mutation rate must lie in (0, 1]");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw SearchError("crossover rate must lie in [0, 1]");
  }
  if (tournament_size < 2) throw SearchError("tournament size must be >= 2");
  if (elitism_count >= population_size) {
    throw SearchError("elitism count must be smaller than the population size");
  }
  if (initial_population.size() > population_size) {
    throw SearchError("initial population larger than the population size");
  }
  for (const auto& individual : initial_population) {
    if (individual.size() != node_count) {
      throw SearchError("initial individual length does not match node count");
    }
  }
}

namespace {

constexpr std::size_t kStartAttempts = 1000;

void check_searchable(const Graph& g, const SearchOptions& options) {
  if (g.node_count() == 0) throw SearchError("graph has no nodes");
  if (options.top_k < 1) throw SearchError("top-k must be >= 1");
  if (options.workers < 1) throw SearchError("workers must be >= 1");
}

/// Independent stream per (seed, unit) so parallel units stay reproducible.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t unit) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(unit), static_cast<std::uint32_t>(unit >> 32)};
  return std::mt19937_64(seq);
}

/// Keeps the best `capacity` distinct defined candidates in ranking order.
class TopK {
 public:
  TopK(const Graph& g, std::size_t capacity) : graph_(&g), capacity_(capacity) {}

  bool would_accept(const Score& score) const {
    if (!score.defined()) return false;
    return items_.size() < capacity_ || *score.value >= *items_.back().score.value;
  }

  void offer(Candidate c) {
    if (!would_accept(c.score)) return;
    for (const Candidate& have : items_) {
      if (have.seeds == c.seeds) return;
    }
    auto pos = std::upper_bound(items_.begin(), items_.end(), c,
                                [this](const Candidate& a, const Candidate& b) {
                                  return ranks_before(*graph_, a, b);
                                });
    items_.insert(pos, std::move(c));
    if (items_.size() > capacity_) items_.pop_back();
  }

  void merge(const TopK& other) {
    for (const Candidate& c : other.items_) offer(c);
  }

  bool empty() const { return items_.empty(); }
  const std::vector<Candidate>& items() const { return items_; }

 private:
  const Graph* graph_;
  std::size_t capacity_;
  std::vector<Candidate> items_;
};

/// Runs fn(worker, unit) for unit in [0, units), units assigned round-robin.
void for_each_unit(std::size_t workers, std::size_t units,
                   const std::function<void(std::size_t, std::size_t)>& fn) {
  workers = std::min(workers, std::max<std::size_t>(units, 1));
  if (workers <= 1) {
    for (std::size_t u = 0; u < units; ++u) fn(0, u);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t u = w; u < units; u += workers) fn(w, u);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

SearchResult finish(TopK top, std::uint64_t evaluations, std::uint64_t seed,
                    Optimizer optimizer) {
  if (top.empty()) {
    throw InfeasibleError("no candidate satisfies every gate constraint");
  }
  SearchResult result{top.items().front(), top.items(), evaluations, seed, optimizer};
  return result;
}

}  // namespace

SearchResult exhaustive_search(const Graph& g, const CostSpec& spec,
                               const SearchOptions& options) {
  check_searchable(g, options);
  const std::size_t n = g.node_count();
  if (n > options.enumeration_cap) {
    throw SearchError(fmt::format("exhaustive search refuses N = {} above the cap of {}", n,
                                  options.enumeration_cap));
  }
  if (n >= 63) throw SearchError("graph too large to enumerate");

  const std::uint64_t last = (std::uint64_t{1} << n) - 1;
  // Fixed chunking keeps the unit layout independent of the worker count.
  constexpr std::uint64_t kChunk = 1 << 14;
  const std::size_t chunks = static_cast<std::size_t>((last + kChunk - 1) / kChunk);

  const std::size_t workers = std::min(options.workers, std::max<std::size_t>(chunks, 1));
  std::vector<CandidateScorer> scorers;
  std::vector<TopK> tops;
  for (std::size_t w = 0; w < workers; ++w) {
    scorers.emplace_back(g, spec);
    tops.emplace_back(g, options.top_k);
  }

  for_each_unit(workers, chunks, [&](std::size_t w, std::size_t chunk) {
    const std::uint64_t begin = 1 + chunk * kChunk;
    const std::uint64_t end = std::min(last, begin + kChunk - 1);
    std::vector<NodeIndex> indices;
    for (std::uint64_t mask = begin; mask <= end; ++mask) {
      indices.clear();
      for (NodeIndex i = 0; i < n; ++i) {
        if (mask >> i & 1U) indices.push_back(i);
      }
      SeedSet seeds = SeedSet::from_indices(g, indices);
      Score score = scorers[w].score(seeds);
      if (tops[w].would_accept(score)) tops[w].offer({std::move(seeds), score});
    }
  });

  TopK top(g, options.top_k);
  for (const TopK& t : tops) top.merge(t);
  return finish(std::move(top), last, 0, Optimizer::kExhaustive);
}

SearchResult anneal(const Graph& g, const CostSpec& spec, const AnnealingSchedule& schedule,
                    std::uint64_t rng_seed, const SearchOptions& options) {
  check_searchable(g, options);
  schedule.validate();
  const std::size_t n = g.node_count();
  const std::size_t workers = std::min(options.workers, schedule.restarts);

  std::vector<CandidateScorer> scorers;
  std::vector<TopK> tops;
  for (std::size_t w = 0; w < workers; ++w) {
    scorers.emplace_back(g, spec);
    tops.emplace_back(g, options.top_k);
  }
  std::vector<std::uint64_t> evaluations(schedule.restarts, 0);

  for_each_unit(workers, schedule.restarts, [&](std::size_t w, std::size_t restart) {
    CandidateScorer& scorer = scorers[w];
    TopK& top = tops[w];
    std::uint64_t& evals = evaluations[restart];
    std::mt19937_64 rng = make_rng(rng_seed, restart);
    std::uniform_int_distribution<std::size_t> pick_node(0, n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto evaluate = [&](const std::vector<bool>& bits) {
      ++evals;
      SeedSet seeds = SeedSet::from_membership(g, bits);
      Score score = scorer.score(seeds);
      if (top.would_accept(score)) top.offer({std::move(seeds), score});
      return score;
    };

    // Uniform nonempty start passing every gate; singletons as a fallback.
    std::vector<bool> current(n, false);
    std::size_t size = 0;
    std::optional<Score> current_score;
    for (std::size_t attempt = 0; attempt < kStartAttempts && !current_score; ++attempt) {
      size = 0;
      for (std::size_t i = 0; i < n; ++i) {
        current[i] = (rng() & 1U) != 0;
        size += current[i];
      }
      if (size == 0) continue;
      Score s = evaluate(current);
      if (s.defined()) current_score = s;
    }
    if (!current_score) {
      std::vector<NodeIndex> order(n);
      for (NodeIndex i = 0; i < n; ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng);
      for (NodeIndex i : order) {
        std::fill(current.begin(), current.end(), false);
        current[i] = true;
        size = 1;
        Score s = evaluate(current);
        if (s.defined()) {
          current_score = s;
          break;
        }
      }
    }
    if (!current_score) {
      throw InfeasibleError("annealing found no gate-feasible starting subset");
    }

    double value = *current_score->value;
    for (double t = schedule.initial_temperature; t > schedule.minimum_temperature;
         t *= schedule.cooling_factor) {
      for (std::size_t step = 0; step < schedule.steps_per_temperature; ++step) {
        const NodeIndex flip = pick_node(rng);
        if (current[flip] && size == 1) continue;
        current[flip] = !current[flip];
        Score next = evaluate(current);
        bool accept = false;
        if (next.defined()) {
          const double delta = *next.value - value;
          accept = delta >= 0.0 || unit(rng) < std::exp(delta / t);
        }
        if (accept) {
          value = *next.value;
          if (current[flip]) ++size;
          else --size;
        } else {
          current[flip] = !current[flip];
        }
      }
    }
  });

  TopK top(g, options.top_k);
  for (const TopK& t : tops) top.merge(t);
  std::uint64_t total = 0;
  for (std::uint64_t e : evaluations) total += e;
  return finish(std::move(top), total, rng_seed, Optimizer::kAnnealing);
}

SearchResult evolve(const Graph& g, const CostSpec& spec, const GaParams& params,
                    std::uint64_t rng_seed, const SearchOptions& options) {
  check_searchable(g, options);
  const std::size_t n = g.node_count();
  params.validate(n);
  const double mutation = params.mutation_rate.value_or(1.0 / static_cast<double>(n));
  const std::size_t pop = params.population_size;

  std::mt19937_64 rng = make_rng(rng_seed, 0);
  std::uniform_int_distribution<std::size_t> pick_node(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_individual(0, pop - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto repair = [&](std::vector<bool>& bits) {
    if (std::find(bits.begin(), bits.end(), true) == bits.end()) bits[pick_node(rng)] = true;
  };

  struct Individual {
    std::vector<bool> bits;
    std::optional<Candidate> candidate;
  };

  std::vector<Individual> population(pop);
  for (std::size_t i = 0; i < pop; ++i) {
    if (i < params.initial_population.size()) {
      population[i].bits = params.initial_population[i];
    } else {
      population[i].bits.resize(n);
      for (std::size_t b = 0; b < n; ++b) population[i].bits[b] = (rng() & 1U) != 0;
    }
    repair(population[i].bits);
  }

  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, pop));
  std::vector<CandidateScorer> scorers;
  for (std::size_t w = 0; w < workers; ++w) scorers.emplace_back(g, spec);
  TopK top(g, options.top_k);
  std::uint64_t evaluations = 0;

  // Scores every individual without a candidate; RNG is not touched here.
  auto evaluate_population = [&](std::vector<Individual>& individuals) {
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < individuals.size(); ++i) {
      if (!individuals[i].candidate) pending.push_back(i);
    }
    for_each_unit(workers, pending.size(), [&](std::size_t w, std::size_t u) {
      Individual& ind = individuals[pending[u]];
      SeedSet seeds = SeedSet::from_membership(g, ind.bits);
      Score score = scorers[w].score(seeds);
      ind.candidate = Candidate{std::move(seeds), score};
    });
    evaluations += pending.size();
    for (std::size_t i : pending) top.offer(*individuals[i].candidate);
  };

  // Defined beats undefined; defined ones follow the ranking order.
  auto fitter = [&g](const Individual& a, const Individual& b) {
    const bool da = a.candidate->score.defined();
    const bool db = b.candidate->score.defined();
    if (da != db) return da;
    if (!da) return false;
    return ranks_before(g, *a.candidate, *b.candidate);
  };

  auto tournament = [&]() -> const Individual& {
    const Individual* winner = &population[pick_individual(rng)];
    for (std::size_t k = 1; k < params.tournament_size; ++k) {
      const Individual& challenger = population[pick_individual(rng)];
      if (fitter(challenger, *winner)) winner = &challenger;
    }
    return *winner;
  };

  evaluate_population(population);
  for (std::size_t gen = 0; gen < params.generations; ++gen) {
    std::vector<Individual> next;
    next.reserve(pop);

    std::vector<std::size_t> order(pop);
    for (std::size_t i = 0; i < pop; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return fitter(population[a], population[b]);
    });
    for (std::size_t e = 0; e < params.elitism_count; ++e) {
      const Individual& elite = population[order[e]];
      if (!elite.candidate->score.defined()) break;
      next.push_back(elite);
    }

    while (next.size() < pop) {
      const Individual& first = tournament();
      const Individual& second = tournament();
      Individual child;
      child.bits = first.bits;
      if (unit(rng) < params.crossover_rate) {
        for (std::size_t b = 0; b < n; ++b) {
          if (rng() & 1U) child.bits[b] = second.bits[b];
        }
      }
      for (std::size_t b = 0; b < n; ++b) {
        if (unit(rng) < mutation) child.bits[b] = !child.bits[b];
      }
      repair(child.bits);
      next.push_back(std::move(child));
    }
    population = std::move(next);
    evaluate_population(population);
  }

  return finish(std::move(top), evaluations, rng_seed, Optimizer::kGenetic);
}

}  // namespace critdata
