#pragma once

#include <string>

#include <json.hpp>

#include "critdata/graph.hpp"
#include "critdata/optimize.hpp"

namespace critdata {

/// Fixed 4-decimal rendering used by every human-readable report.
std::string format_fixed4(double value);

/// Tab-separated ranking: rank, seeds, n, S, clean, gate_degree, score.
std::string render_tsv(const Graph& g, const SearchResult& result);

/// {optimizer, rng_seed, evaluations, best{...}, ranked[...]}; each candidate
/// carries seeds, n, S, clean, score and gate_degree at full precision.
nlohmann::json to_json(const Graph& g, const SearchResult& result);
nlohmann::json to_json(const Graph& g, const Candidate& candidate);

}  // namespace critdata
