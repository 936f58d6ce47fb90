#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "critdata/graph.hpp"

namespace critdata {

/// One aggregated line of a transaction log: `count` transactions that read
/// `source` and wrote `target`.
struct TransactionRecord {
  std::string source;
  std::string target;
  std::uint64_t count = 1;

  friend bool operator==(const TransactionRecord&, const TransactionRecord&) = default;
};

class IngestError : public Error {
 public:
  using Error::Error;
};

/// One node per distinct element (weight 1), one edge per distinct ordered
/// pair weighted by its share of the total transaction count. Nodes and edges
/// are emitted in sorted id order so the result does not depend on record
/// order. Self-transactions become self-loops.
Graph build_from_log(const std::vector<TransactionRecord>& records);

/// `transaction_count` uniformly random ordered pairs of distinct nodes
/// n1..n<node_count>, each with count 1.
std::vector<TransactionRecord> generate_log(std::size_t node_count,
                                            std::size_t transaction_count,
                                            std::uint64_t rng_seed);

/// CSV `src,dst[,count]`, optional `src,dst,count` header, blank lines skipped.
std::vector<TransactionRecord> parse_log_csv(std::string_view text);
std::string write_log_csv(const std::vector<TransactionRecord>& records);

}  // namespace critdata
