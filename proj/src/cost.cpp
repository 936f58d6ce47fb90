#include "critdata/cost.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "text.hpp"

namespace critdata {

double CoefficientFn::operator()(std::size_t n) const {
  if (form == Form::kConstant) return c;
  if (n == 0) throw CostError("coefficient c/n evaluated at n = 0");
  return c / static_cast<double>(n);
}

void validate(const CostSpec& spec, const ConstraintRegistry& registry) {
  for (const Gate& gate : spec.gates) {
    if (!(gate.tau > 0.0 && gate.tau <= 1.0)) {
      throw CostError(fmt::format("gate '{}': tau must lie in (0, 1], got {}",
                                  gate.constraint_id, gate.tau));
    }
    registry.resolve(gate.constraint_id);
  }
  for (const Penalty& penalty : spec.penalties) {
    if (!std::isfinite(penalty.epsilon)) {
      throw CostError(fmt::format("penalty '{}': epsilon must be finite", penalty.constraint_id));
    }
    registry.resolve(penalty.constraint_id);
  }
  for (const CoefficientFn* f : {&spec.alpha, &spec.beta, &spec.gamma, &spec.delta}) {
    if (!std::isfinite(f->c)) throw CostError("coefficient must be finite");
  }
}

namespace {

CostError config_error(std::size_t line, std::string_view what) {
  return CostError(fmt::format("cost config line {}: {}", line, what));
}

CoefficientFn parse_coefficient(std::size_t line, std::string_view value) {
  auto fields = text::split_ws(value);
  if (fields.size() != 2) {
    throw config_error(line, "coefficient must be 'const <x>' or 'inv <x>'");
  }
  auto c = text::parse_double(fields[1]);
  if (!c || !std::isfinite(*c)) {
    throw config_error(line, fmt::format("bad coefficient value '{}'", fields[1]));
  }
  if (fields[0] == "const") return CoefficientFn::constant(*c);
  if (fields[0] == "inv") return CoefficientFn::over_n(*c);
  throw config_error(line, fmt::format("unknown coefficient form '{}'", fields[0]));
}

// `<id> [key=<real>]` with the given option key.
std::pair<std::string, std::optional<double>> parse_reference(std::size_t line,
                                                              std::string_view value,
                                                              std::string_view key) {
  auto fields = text::split_ws(value);
  if (fields.empty() || fields.size() > 2) {
    throw config_error(line, fmt::format("expected '<constraint-id> [{}=<x>]'", key));
  }
  std::optional<double> option;
  if (fields.size() == 2) {
    auto eq = fields[1].find('=');
    if (eq == std::string_view::npos || fields[1].substr(0, eq) != key) {
      throw config_error(line, fmt::format("expected '{}=<x>', got '{}'", key, fields[1]));
    }
    option = text::parse_double(fields[1].substr(eq + 1));
    if (!option) throw config_error(line, fmt::format("bad number in '{}'", fields[1]));
  }
  return {std::string(fields[0]), option};
}

}  // namespace

CostSpec parse_cost_spec(std::string_view body, const ConstraintRegistry& registry) {
  CostSpec spec;
  text::for_each_line(body, [&](std::size_t line, std::string_view raw) {
    std::string_view content = text::trim(raw);
    if (content.empty() || content.front() == '#') return;
    auto eq = content.find('=');
    if (eq == std::string_view::npos) throw config_error(line, "expected 'key = value'");
    std::string_view key = text::trim(content.substr(0, eq));
    std::string_view value = text::trim(content.substr(eq + 1));

    if (key == "alpha") {
      spec.alpha = parse_coefficient(line, value);
    } else if (key == "beta") {
      spec.beta = parse_coefficient(line, value);
    } else if (key == "gamma") {
      spec.gamma = parse_coefficient(line, value);
    } else if (key == "delta") {
      spec.delta = parse_coefficient(line, value);
    } else if (key == "gate") {
      auto [id, tau] = parse_reference(line, value, "tau");
      spec.gates.push_back({std::move(id), tau.value_or(1.0)});
    } else if (key == "penalty") {
      auto [id, eps] = parse_reference(line, value, "eps");
      spec.penalties.push_back({std::move(id), eps.value_or(1.0)});
    } else if (key == "measure") {
      auto mode = parse_measure_mode(value);
      if (!mode) throw config_error(line, fmt::format("unknown measure '{}'", value));
      spec.measure = *mode;
    } else {
      throw config_error(line, fmt::format("unknown key '{}'", key));
    }
  });
  validate(spec, registry);
  return spec;
}

CostSpec load_cost_spec_file(const std::string& path, const ConstraintRegistry& registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CostError(fmt::format("cannot open cost config '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cost_spec(buf.str(), registry);
}

namespace {

void check_arguments(double soiled, std::size_t n, std::size_t node_count) {
  if (n < 1 || n > node_count) {
    throw CostError(fmt::format("seed count n = {} outside 1..{}", n, node_count));
  }
  if (!(soiled >= 0.0 && soiled <= 1.0)) {
    throw CostError(fmt::format("soiled measure {} outside [0, 1]", soiled));
  }
}

}  // namespace

double basic_cost(double soiled, std::size_t n, std::size_t node_count,
                  const CoefficientFn& beta) {
  check_arguments(soiled, n, node_count);
  const double fraction = static_cast<double>(n) / static_cast<double>(node_count);
  const double remainder = 1.0 - fraction;
  return soiled * soiled + beta(n) * (remainder * remainder);
}

double generalized_cost(double soiled, std::size_t n, std::size_t node_count,
                        const CostSpec& spec, std::span<const double> constraint_values) {
  check_arguments(soiled, n, node_count);
  if (constraint_values.size() != spec.penalties.size()) {
    throw CostError(fmt::format("{} constraint values supplied for {} penalties",
                                constraint_values.size(), spec.penalties.size()));
  }
  const double fraction = static_cast<double>(n) / static_cast<double>(node_count);
  const double remainder = spec.gamma(n) - spec.delta(n) * fraction;
  double value = spec.alpha(n) * (soiled * soiled) + spec.beta(n) * (remainder * remainder);
  for (std::size_t k = 0; k < constraint_values.size(); ++k) {
    value += spec.penalties[k].epsilon * constraint_values[k];
  }
  return value;
}

Score gated_cost(double soiled, std::size_t n, std::size_t node_count, const CostSpec& spec,
                 std::span<const double> gate_degrees,
                 std::span<const double> constraint_values) {
  if (gate_degrees.size() != spec.gates.size()) {
    throw CostError(fmt::format("{} gate degrees supplied for {} gates", gate_degrees.size(),
                                spec.gates.size()));
  }
  double degree = 1.0;
  for (double d : gate_degrees) {
    if (!(d >= 0.0 && d <= 1.0)) {
      throw CostError(fmt::format("gate degree {} outside [0, 1]", d));
    }
    degree = std::min(degree, d);
  }

  Score score;
  score.soiled = soiled;
  score.n = n;
  score.gate_degree = degree;
  const bool open = std::all_of(spec.gates.begin(), spec.gates.end(),
                                [degree](const Gate& g) { return degree >= g.tau; });
  if (!open) {
    check_arguments(soiled, n, node_count);
    score.status = Score::Status::kGateUndefined;
    return score;
  }
  const double value = generalized_cost(soiled, n, node_count, spec, constraint_values);
  if (!std::isfinite(value)) throw CostError("cost evaluated to a non-finite value");
  score.value = value;
  return score;
}

namespace {

std::vector<ConstraintEvaluator> resolve_all(const std::vector<std::string>& ids,
                                             const ConstraintRegistry& registry) {
  std::vector<ConstraintEvaluator> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) out.push_back(registry.resolve(id));
  return out;
}

template <typename T>
std::vector<std::string> ids_of(const std::vector<T>& refs) {
  std::vector<std::string> ids;
  for (const T& r : refs) ids.push_back(r.constraint_id);
  return ids;
}

}  // namespace

CandidateScorer::CandidateScorer(const Graph& g, CostSpec spec,
                                 const ConstraintRegistry& registry)
    : graph_(&g),
      spec_(std::move(spec)),
      penalty_evaluators_(resolve_all(ids_of(spec_.penalties), registry)),
      gate_evaluators_(resolve_all(ids_of(spec_.gates), registry)),
      propagator_(g, spec_.measure),
      penalty_values_(spec_.penalties.size()),
      gate_values_(spec_.gates.size()) {
  validate(spec_, registry);
}

Score CandidateScorer::score(const SeedSet& seeds) {
  for (std::size_t k = 0; k < gate_evaluators_.size(); ++k) {
    gate_values_[k] = gate_evaluators_[k](*graph_, seeds);
  }
  for (std::size_t k = 0; k < penalty_evaluators_.size(); ++k) {
    penalty_values_[k] = penalty_evaluators_[k](*graph_, seeds);
  }
  const double soiled = propagator_.measure(seeds.nodes());
  return gated_cost(soiled, seeds.size(), graph_->node_count(), spec_, gate_values_,
                    penalty_values_);
}

}  // namespace critdata
