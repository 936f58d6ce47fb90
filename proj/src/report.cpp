#include "critdata/report.hpp"

#include <fmt/format.h>

namespace critdata {

std::string format_fixed4(double value) {
  std::string out = fmt::format("{:.4f}", value);
  if (out == "-0.0000") out = "0.0000";
  return out;
}

std::string render_tsv(const Graph& g, const SearchResult& result) {
  std::string out = "rank\tseeds\tn\tS\tclean\tgate_degree\tscore\n";
  std::size_t rank = 1;
  for (const Candidate& c : result.ranked) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", rank++, c.seeds.to_string(g),
                       c.seeds.size(), format_fixed4(c.score.soiled),
                       format_fixed4(1.0 - c.score.soiled), format_fixed4(c.score.gate_degree),
                       format_fixed4(*c.score.value));
  }
  return out;
}

nlohmann::json to_json(const Graph& g, const Candidate& candidate) {
  return {
      {"seeds", candidate.seeds.ids(g)},
      {"n", candidate.seeds.size()},
      {"S", candidate.score.soiled},
      {"clean", 1.0 - candidate.score.soiled},
      {"score", *candidate.score.value},
      {"gate_degree", candidate.score.gate_degree},
  };
}

nlohmann::json to_json(const Graph& g, const SearchResult& result) {
  nlohmann::json ranked = nlohmann::json::array();
  for (const Candidate& c : result.ranked) ranked.push_back(to_json(g, c));
  return {
      {"optimizer", std::string(to_string(result.optimizer))},
      {"rng_seed", result.rng_seed},
      {"evaluations", result.evaluations},
      {"best", to_json(g, result.best)},
      {"ranked", std::move(ranked)},
  };
}

}  // namespace critdata
