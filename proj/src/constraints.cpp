#include "critdata/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "text.hpp"

namespace critdata {

double same_component(const Graph& g, const SeedSet& seeds) {
  const auto& component_of = g.components().component_of;
  const std::size_t first = component_of.at(seeds.nodes().front());
  for (NodeIndex v : seeds.nodes()) {
    if (component_of.at(v) != first) return 0.0;
  }
  return 1.0;
}

ConstraintEvaluator same_component_constraint() {
  return {"same-component", ConstraintKind::kCrisp, &same_component};
}

ConstraintEvaluator cardinality_between(std::size_t min, std::size_t max) {
  if (min < 1 || min > max) {
    throw ConstraintError(fmt::format("cardinality bounds need 1 <= min <= max, got {}..{}", min, max));
  }
  return {fmt::format("cardinality:{}:{}", min, max), ConstraintKind::kCrisp,
          [min, max](const Graph&, const SeedSet& seeds) {
            return seeds.size() >= min && seeds.size() <= max ? 1.0 : 0.0;
          }};
}

ConstraintEvaluator require_nodes(std::vector<std::string> required) {
  std::string id = fmt::format("require:{}", fmt::join(required, ","));
  return {std::move(id), ConstraintKind::kCrisp,
          [required = std::move(required)](const Graph& g, const SeedSet& seeds) {
            double result = 1.0;
            for (const std::string& r : required) {
              if (!seeds.contains(g.index_of(r))) result = 0.0;
            }
            return result;
          }};
}

ConstraintEvaluator forbid_nodes(std::vector<std::string> forbidden) {
  std::string id = fmt::format("forbid:{}", fmt::join(forbidden, ","));
  return {std::move(id), ConstraintKind::kCrisp,
          [forbidden = std::move(forbidden)](const Graph& g, const SeedSet& seeds) {
            double result = 1.0;
            for (const std::string& f : forbidden) {
              if (seeds.contains(g.index_of(f))) result = 0.0;
            }
            return result;
          }};
}

ConstraintEvaluator fuzzy_small_subset(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ConstraintError(fmt::format("fuzzy-small scale must be positive, got {}", scale));
  }
  return {fmt::format("fuzzy-small:{}", text::format_double(scale)), ConstraintKind::kFuzzy,
          [scale](const Graph&, const SeedSet& seeds) {
            const double n = static_cast<double>(seeds.size());
            return std::max(0.0, 1.0 - (n - 1.0) / scale);
          }};
}

void ConstraintRegistry::add(std::string name, Factory factory) {
  factories_[std::move(name)] = std::move(factory);
}

namespace {

std::pair<std::string_view, std::string_view> split_id(std::string_view id) {
  auto colon = id.find(':');
  if (colon == std::string_view::npos) return {id, {}};
  return {id.substr(0, colon), id.substr(colon + 1)};
}

std::vector<std::string> id_list(std::string_view argument) {
  std::vector<std::string> out;
  if (argument.empty()) return out;
  for (std::string_view part : text::split(argument, ',')) {
    if (part.empty()) throw ConstraintError("empty node id in list");
    out.emplace_back(part);
  }
  return out;
}

}  // namespace

bool ConstraintRegistry::contains(std::string_view id) const {
  try {
    resolve(id);
    return true;
  } catch (const ConstraintError&) {
    return false;
  }
}

ConstraintEvaluator ConstraintRegistry::resolve(std::string_view id) const {
  auto [name, argument] = split_id(id);
  auto it = factories_.find(name);
  if (it == factories_.end()) {
    throw ConstraintError(fmt::format("unknown constraint id '{}'", id));
  }
  try {
    ConstraintEvaluator evaluator = it->second(argument);
    evaluator.id = std::string(id);
    return evaluator;
  } catch (const ConstraintError& e) {
    throw ConstraintError(fmt::format("constraint id '{}': {}", id, e.what()));
  }
}

const ConstraintRegistry& ConstraintRegistry::builtin() {
  static const ConstraintRegistry registry = [] {
    ConstraintRegistry r;
    r.add("same-component", [](std::string_view arg) {
      if (!arg.empty()) throw ConstraintError("same-component takes no argument");
      return same_component_constraint();
    });
    r.add("cardinality", [](std::string_view arg) {
      auto parts = text::split(arg, ':');
      std::optional<std::uint64_t> lo, hi;
      if (parts.size() == 2) {
        lo = text::parse_u64(parts[0]);
        hi = text::parse_u64(parts[1]);
      }
      if (!lo || !hi) throw ConstraintError("expected cardinality:<min>:<max>");
      return cardinality_between(*lo, *hi);
    });
    r.add("require", [](std::string_view arg) { return require_nodes(id_list(arg)); });
    r.add("forbid", [](std::string_view arg) { return forbid_nodes(id_list(arg)); });
    r.add("fuzzy-small", [](std::string_view arg) {
      auto scale = text::parse_double(arg);
      if (!scale) throw ConstraintError("expected fuzzy-small:<scale>");
      return fuzzy_small_subset(*scale);
    });
    return r;
  }();
  return registry;
}

}  // namespace critdata
