#pragma once

// Precision/recall at k against relevance judgments.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hnsir {

/// query id -> ranked doc ids.
using Runs = std::map<std::string, std::vector<std::string>>;
/// query id -> doc id -> relevance (0 or 1).
using Qrels = std::map<std::string, std::map<std::string, int>>;

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QueryMetrics {
  std::string query_id;
  double precision = 0.0;
  double recall = 0.0;
};

struct EvaluationReport {
  std::vector<QueryMetrics> per_query;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
};

/// precision@k = relevant in top k / k; recall@k = relevant in top k / all
/// relevant (0 when the query has no relevant documents).
EvaluationReport evaluate(const Runs& runs, const Qrels& qrels, std::size_t k);

/// `query_id<TAB>doc_id<TAB>relevance` lines, relevance 0 or 1.
Qrels parse_qrels(std::istream& in);
Qrels load_qrels(const std::string& path);

/// `query_id<TAB>query_string` lines, in file order.
std::vector<std::pair<std::string, std::string>> parse_queries(std::istream& in);
std::vector<std::pair<std::string, std::string>> load_queries(const std::string& path);

}  // namespace hnsir
