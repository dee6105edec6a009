#pragma once

// Subcommands of the `hnsir` tool. Each returns a process exit code and
// writes results to `out`, diagnostics to `err`.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "hnsir/corpus.hpp"
#include "hnsir/engine.hpp"

namespace hnsir {

struct IndexCommand {
  std::string corpus_path;
  std::string out_path;
  WeightingMode mode = WeightingMode::standard;
};

struct SearchCommand {
  std::string index_path;
  std::string query;
  std::size_t k = 10;
  bool fuzzy = false;
  std::size_t max_edit = 1;
  std::optional<std::string> synonyms_path;
};

struct ReplCommand {
  std::string index_path;
  std::size_t k = 10;
  bool fuzzy = false;
  std::size_t max_edit = 1;
  std::optional<std::string> synonyms_path;
};

struct ServeCommand {
  std::string index_path;
  std::string listen = "127.0.0.1:8080";
  std::size_t k = 10;
  std::size_t max_edit = 1;
  std::optional<std::string> synonyms_path;
  std::optional<WeightingMode> mode;  // for POST /api/index; defaults to the index's mode
};

struct EvalCommand {
  std::string index_path;
  std::string queries_path;
  std::string qrels_path;
  std::size_t k = 10;
};

int cmd_index(const IndexCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_search(const SearchCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_repl(const ReplCommand& cmd, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_serve(const ServeCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err);

/// "rank doc_id score" lines, score with 6 decimals.
void print_hits(const std::vector<ScoredHit>& hits, std::ostream& out);
void print_explanation(const Explanation& e, std::ostream& out);

/// Reads queries until EOF or `:quit`. `:explain DOC` breaks down the last query.
int run_repl(const SearchEngine& engine, const SearchOptions& options, std::istream& in, std::ostream& out,
             std::ostream& err);

}  // namespace hnsir
