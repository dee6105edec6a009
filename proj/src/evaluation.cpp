#include "hnsir/evaluation.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <string_view>

namespace hnsir {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  for (std::size_t tab; (tab = line.find('\t')) != std::string_view::npos; line.remove_prefix(tab + 1))
    fields.push_back(line.substr(0, tab));
  fields.push_back(line);
  return fields;
}

// Yields non-blank lines without a trailing CR, with their 1-based numbers.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(std::string_view(line), line_no);
  }
}

}  // namespace

EvaluationReport evaluate(const Runs& runs, const Qrels& qrels, std::size_t k) {
  if (k == 0) throw EvaluationError("k must be at least 1");
  EvaluationReport report;
  for (const auto& [query_id, ranked] : runs) {
    auto judged = qrels.find(query_id);
    if (judged == qrels.end()) throw EvaluationError("query '" + query_id + "' has no relevance judgments");
    std::size_t relevant_total = 0;
    for (const auto& [doc, rel] : judged->second) relevant_total += rel > 0 ? 1 : 0;

    std::size_t hits = 0;
    std::set<std::string_view> counted;
    for (std::size_t i = 0; i < ranked.size() && i < k; ++i) {
      auto rel = judged->second.find(ranked[i]);
      if (rel != judged->second.end() && rel->second > 0 && counted.insert(ranked[i]).second) ++hits;
    }
    QueryMetrics m{query_id, static_cast<double>(hits) / static_cast<double>(k),
                   relevant_total ? static_cast<double>(hits) / static_cast<double>(relevant_total) : 0.0};
    report.macro_precision += m.precision;
    report.macro_recall += m.recall;
    report.per_query.push_back(std::move(m));
  }
  if (!report.per_query.empty()) {
    report.macro_precision /= static_cast<double>(report.per_query.size());
    report.macro_recall /= static_cast<double>(report.per_query.size());
  }
  return report;
}

Qrels parse_qrels(std::istream& in) {
  Qrels qrels;
  for_each_line(in, [&](std::string_view line, std::size_t line_no) {
    const auto f = split_tabs(line);
    auto fail = [&](const std::string& what) {
      throw EvaluationError("qrels line " + std::to_string(line_no) + ": " + what);
    };
    if (f.size() != 3) fail("expected query_id<TAB>doc_id<TAB>relevance");
    if (f[0].empty() || f[1].empty()) fail("empty query or document id");
    if (f[2] != "0" && f[2] != "1") fail("relevance must be 0 or 1");
    if (!qrels[std::string(f[0])].emplace(std::string(f[1]), f[2] == "1" ? 1 : 0).second)
      fail("duplicate judgment");
  });
  return qrels;
}

Qrels load_qrels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EvaluationError("cannot read qrels file '" + path + "'");
  return parse_qrels(in);
}

std::vector<std::pair<std::string, std::string>> parse_queries(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> queries;
  std::set<std::string> seen;
  for_each_line(in, [&](std::string_view line, std::size_t line_no) {
    const auto tab = line.find('\t');
    auto fail = [&](const std::string& what) {
      throw EvaluationError("queries line " + std::to_string(line_no) + ": " + what);
    };
    if (tab == std::string_view::npos || tab == 0) fail("expected query_id<TAB>query_string");
    std::string id(line.substr(0, tab));
    if (!seen.insert(id).second) fail("duplicate query id '" + id + "'");
    queries.emplace_back(std::move(id), std::string(line.substr(tab + 1)));
  });
  return queries;
}

std::vector<std::pair<std::string, std::string>> load_queries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EvaluationError("cannot read queries file '" + path + "'");
  return parse_queries(in);
}

}  // namespace hnsir
