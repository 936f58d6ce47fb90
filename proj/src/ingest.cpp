#include "critdata/ingest.hpp"

#include <map>
#include <random>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "text.hpp"

namespace critdata {

Graph build_from_log(const std::vector<TransactionRecord>& records) {
  if (records.empty()) throw IngestError("transaction log has no records");

  std::set<std::string> elements;
  std::map<std::pair<std::string, std::string>, std::uint64_t> pair_counts;
  std::uint64_t total = 0;
  for (const TransactionRecord& r : records) {
    if (r.source.empty() || r.target.empty()) {
      throw IngestError("transaction record with empty element id");
    }
    if (r.count == 0) throw IngestError("transaction record with zero count");
    elements.insert(r.source);
    elements.insert(r.target);
    pair_counts[{r.source, r.target}] += r.count;
    total += r.count;
  }

  Graph::Builder builder;
  for (const std::string& id : elements) builder.add_node(id);
  const double denom = static_cast<double>(total);
  for (const auto& [pair, count] : pair_counts) {
    builder.add_edge(pair.first, pair.second, static_cast<double>(count) / denom);
  }
  return std::move(builder).build();
}

std::vector<TransactionRecord> generate_log(std::size_t node_count,
                                            std::size_t transaction_count,
                                            std::uint64_t rng_seed) {
  if (node_count < 2) throw IngestError("gen-log needs at least 2 nodes");
  if (transaction_count < 1) throw IngestError("gen-log needs at least 1 transaction");

  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::size_t> pick_source(0, node_count - 1);
  std::uniform_int_distribution<std::size_t> pick_other(0, node_count - 2);
  std::vector<TransactionRecord> out;
  out.reserve(transaction_count);
  for (std::size_t t = 0; t < transaction_count; ++t) {
    std::size_t src = pick_source(rng);
    std::size_t dst = pick_other(rng);
    if (dst >= src) ++dst;
    out.push_back({fmt::format("n{}", src + 1), fmt::format("n{}", dst + 1), 1});
  }
  return out;
}

std::vector<TransactionRecord> parse_log_csv(std::string_view body) {
  std::vector<TransactionRecord> out;
  bool first = true;
  text::for_each_line(body, [&](std::size_t line_no, std::string_view line) {
    line = text::trim(line);
    if (line.empty()) return;
    auto fields = text::split(line, ',');
    for (auto& f : fields) f = text::trim(f);
    if (first) {
      first = false;
      if (fields.size() >= 2 && fields[0] == "src" && fields[1] == "dst") return;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw IngestError(fmt::format("line {}: expected src,dst[,count]", line_no));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw IngestError(fmt::format("line {}: empty element id", line_no));
    }
    TransactionRecord rec{std::string(fields[0]), std::string(fields[1]), 1};
    if (fields.size() == 3) {
      auto count = text::parse_u64(fields[2]);
      if (!count || *count == 0) {
        throw IngestError(
            fmt::format("line {}: count '{}' is not a positive integer", line_no, fields[2]));
      }
      rec.count = *count;
    }
    out.push_back(std::move(rec));
  });
  return out;
}

std::string write_log_csv(const std::vector<TransactionRecord>& records) {
  std::string out = "src,dst,count\n";
  for (const TransactionRecord& r : records) {
    out += fmt::format("{},{},{}\n", r.source, r.target, r.count);
  }
  return out;
}

}  // namespace critdata
