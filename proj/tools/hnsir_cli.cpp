// hnsir: index, search and evaluate a corpus with the hypercomplex ranking model.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hnsir/commands.hpp"

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypercomplex vector-space retrieval engine"};
  app.require_subcommand(1);

  const std::vector<std::string> modes{"standard", "complement"};

  hnsir::IndexCommand index;
  std::string index_mode = "standard";
  auto* index_cmd = app.add_subcommand("index", "Build an index file from a JSON-lines corpus");
  index_cmd->add_option("--corpus", index.corpus_path, "Corpus file, one {\"id\",\"text\"} object per line")
      ->required();
  index_cmd->add_option("--out", index.out_path, "Index file to write")->required();
  index_cmd->add_option("--mode", index_mode, "Weighting mode")
      ->check(CLI::IsMember(modes))
      ->capture_default_str();

  hnsir::SearchCommand search;
  std::vector<std::string> query_words;
  std::string search_synonyms;
  auto* search_cmd = app.add_subcommand("search", "Rank documents for a query (use -- before a leading '-')");
  search_cmd->add_option("--index", search.index_path, "Index file")->required();
  search_cmd->add_option("--k", search.k, "Number of results")->check(CLI::PositiveNumber);
  search_cmd->add_flag("--fuzzy", search.fuzzy, "Expand '~' terms with edit-distance neighbours");
  search_cmd->add_option("--max-edit", search.max_edit, "Fuzzy edit distance")->check(CLI::Range(1, 2));
  search_cmd->add_option("--synonyms", search_synonyms, "Synonyms file (term<TAB>synonym<TAB>prob)");
  search_cmd->add_option("query", query_words, "Query")->required();

  hnsir::ReplCommand repl;
  std::string repl_synonyms;
  auto* repl_cmd = app.add_subcommand("repl", "Interactive search loop");
  repl_cmd->add_option("--index", repl.index_path, "Index file")->required();
  repl_cmd->add_option("--k", repl.k, "Number of results")->check(CLI::PositiveNumber);
  repl_cmd->add_flag("--fuzzy", repl.fuzzy, "Expand '~' terms");
  repl_cmd->add_option("--max-edit", repl.max_edit, "Fuzzy edit distance")->check(CLI::Range(1, 2));
  repl_cmd->add_option("--synonyms", repl_synonyms, "Synonyms file");

  hnsir::ServeCommand serve;
  std::string serve_synonyms;
  std::string serve_mode;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--index", serve.index_path, "Index file")->required();
  serve_cmd->add_option("--listen", serve.listen, "HOST:PORT")->capture_default_str();
  serve_cmd->add_option("--k", serve.k, "Default number of results")->check(CLI::PositiveNumber);
  serve_cmd->add_option("--max-edit", serve.max_edit, "Fuzzy edit distance")->check(CLI::Range(1, 2));
  serve_cmd->add_option("--synonyms", serve_synonyms, "Synonyms file");
  auto* serve_mode_opt = serve_cmd->add_option("--mode", serve_mode, "Weighting mode for POST /api/index")
                             ->check(CLI::IsMember(modes));

  hnsir::EvalCommand eval;
  auto* eval_cmd = app.add_subcommand("eval", "Precision/recall of the hypercomplex ranking and the cosine baseline");
  eval_cmd->add_option("--index", eval.index_path, "Index file")->required();
  eval_cmd->add_option("--queries", eval.queries_path, "query_id<TAB>query lines")->required();
  eval_cmd->add_option("--qrels", eval.qrels_path, "query_id<TAB>doc_id<TAB>0|1 lines")->required();
  eval_cmd->add_option("--k", eval.k, "Cutoff")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (*index_cmd) {
    index.mode = hnsir::parse_weighting_mode(index_mode);
    return hnsir::cmd_index(index, std::cout, std::cerr);
  }
  if (*search_cmd) {
    search.query = join(query_words);
    if (!search_synonyms.empty()) search.synonyms_path = search_synonyms;
    return hnsir::cmd_search(search, std::cout, std::cerr);
  }
  if (*repl_cmd) {
    if (!repl_synonyms.empty()) repl.synonyms_path = repl_synonyms;
    return hnsir::cmd_repl(repl, std::cin, std::cout, std::cerr);
  }
  if (*serve_cmd) {
    if (!serve_synonyms.empty()) serve.synonyms_path = serve_synonyms;
    if (serve_mode_opt->count()) serve.mode = hnsir::parse_weighting_mode(serve_mode);
    return hnsir::cmd_serve(serve, std::cout, std::cerr);
  }
  return hnsir::cmd_eval(eval, std::cout, std::cerr);
}
