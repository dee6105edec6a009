#include "hnsir/commands.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "hnsir/evaluation.hpp"
#include "hnsir/persist.hpp"
#include "hnsir/service.hpp"

namespace hnsir {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void print_unknown(const std::vector<std::string>& unknown, std::ostream& err) {
  if (unknown.empty()) return;
  err << "unknown terms:";
  for (const auto& t : unknown) err << ' ' << t;
  err << '\n';
}

SynonymTable load_synonyms(const std::optional<std::string>& path) {
  return path ? SynonymTable::load(*path) : SynonymTable{};
}

void report(const std::exception& e, std::ostream& err) { err << "error: " << e.what() << '\n'; }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void print_hits(const std::vector<ScoredHit>& hits, std::ostream& out) {
  for (std::size_t i = 0; i < hits.size(); ++i)
    out << (i + 1) << ' ' << hits[i].doc_id << ' ' << fixed6(hits[i].score) << '\n';
}

void print_explanation(const Explanation& e, std::ostream& out) {
  out << "term\tq+\tq-\td+\td-\tcontribution\n";
  for (const auto& r : e.rows)
    out << r.term << '\t' << fixed6(r.q_plus) << '\t' << fixed6(r.q_minus) << '\t' << fixed6(r.d_plus) << '\t'
        << fixed6(r.d_minus) << '\t' << fixed6(r.contribution) << '\n';
  out << "total\t" << fixed6(e.total) << '\n';
}

int cmd_index(const IndexCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const auto records = load_corpus(cmd.corpus_path);
    const InvertedIndex index = index_corpus(records, cmd.mode);
    save_index(index, cmd.out_path);
    out << "docs " << index.num_docs() << '\n'
        << "terms " << index.num_terms() << '\n'
        << "postings " << index.num_postings() << '\n'
        << "mode " << to_string(index.mode()) << '\n';
    return 0;
  } catch (const std::exception& e) {
    report(e, err);
    return 1;
  }
}

int cmd_search(const SearchCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    EngineConfig config{WeightingMode::standard, cmd.max_edit, cmd.synonyms_path, cmd.k, cmd.index_path};
    SearchEngine engine(load_index(cmd.index_path), config, load_synonyms(cmd.synonyms_path));
    const SearchResult result =
        engine.search(cmd.query, SearchOptions{cmd.k, cmd.fuzzy, cmd.synonyms_path.has_value()});
    print_hits(result.hits, out);
    print_unknown(result.unknown_terms, err);
    return 0;
  } catch (const ParseError& e) {
    err << "error: query: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    report(e, err);
    return 1;
  }
}

int run_repl(const SearchEngine& engine, const SearchOptions& options, std::istream& in, std::ostream& out,
             std::ostream& err) {
  std::optional<std::string> last_query;
  std::string line;
  while (true) {
    out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    const std::string input = trim(line);
    if (input.empty()) continue;
    if (input == ":quit" || input == ":q") break;
    if (input == ":help") {
      out << "QUERY            rank documents\n"
             ":explain DOC_ID  per-term breakdown of the last query for DOC_ID\n"
             ":quit            exit\n";
      continue;
    }
    try {
      if (input.rfind(":explain", 0) == 0) {
        const std::string doc = trim(std::string_view(input).substr(8));
        if (doc.empty()) {
          err << "error: usage: :explain DOC_ID\n";
        } else if (!last_query) {
          err << "error: no query to explain yet\n";
        } else {
          print_explanation(engine.explain(*last_query, doc, options), out);
        }
        continue;
      }
      if (input.front() == ':') {
        err << "error: unknown command " << input << '\n';
        continue;
      }
      const SearchResult result = engine.search(input, options);
      last_query = input;
      print_hits(result.hits, out);
      print_unknown(result.unknown_terms, err);
    } catch (const std::exception& e) {
      report(e, err);
    }
  }
  return 0;
}

int cmd_repl(const ReplCommand& cmd, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    EngineConfig config{WeightingMode::standard, cmd.max_edit, cmd.synonyms_path, cmd.k, cmd.index_path};
    SearchEngine engine(load_index(cmd.index_path), config, load_synonyms(cmd.synonyms_path));
    return run_repl(engine, SearchOptions{cmd.k, cmd.fuzzy, cmd.synonyms_path.has_value()}, in, out, err);
  } catch (const std::exception& e) {
    report(e, err);
    return 1;
  }
}

int cmd_serve(const ServeCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const auto [host, port] = parse_listen_address(cmd.listen);
    InvertedIndex index = load_index(cmd.index_path);
    const WeightingMode mode = cmd.mode.value_or(index.mode());
    EngineConfig config{mode, cmd.max_edit, cmd.synonyms_path, cmd.k, cmd.index_path};
    SearchEngine engine(std::move(index), config, load_synonyms(cmd.synonyms_path));
    ApiService service(engine, mode);
    out << "listening on " << host << ':' << port << std::endl;
    if (!serve_http(service, host, port)) {
      err << "error: cannot listen on " << cmd.listen << '\n';
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    report(e, err);
    return 1;
  }
}

int cmd_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    if (cmd.k == 0) throw std::invalid_argument("k must be at least 1");
    const InvertedIndex index = load_index(cmd.index_path);
    const auto queries = load_queries(cmd.queries_path);
    const Qrels qrels = load_qrels(cmd.qrels_path);
    if (qrels.empty()) throw EvaluationError("qrels file has no judgments");
    if (queries.empty()) throw EvaluationError("queries file has no queries");

    Runs hns;
    Runs cosine;
    for (const auto& [id, text] : queries) {
      if (!qrels.contains(id)) throw EvaluationError("query '" + id + "' has no relevance judgments");
      const HyperQuery q = compile_query(parse_query(text), index.vocab());
      for (const auto& h : score(index, q, cmd.k)) hns[id].push_back(h.doc_id);
      for (const auto& h : baseline_cosine(index, q, cmd.k)) cosine[id].push_back(h.doc_id);
      hns.try_emplace(id);
      cosine.try_emplace(id);
    }
    const EvaluationReport a = evaluate(hns, qrels, cmd.k);
    const EvaluationReport b = evaluate(cosine, qrels, cmd.k);

    const std::string k = std::to_string(cmd.k);
    out << "query\thns_p@" << k << "\thns_r@" << k << "\tcosine_p@" << k << "\tcosine_r@" << k << '\n';
    // Both reports iterate the same query ids in the same order.
    for (std::size_t i = 0; i < a.per_query.size(); ++i)
      out << a.per_query[i].query_id << '\t' << fixed6(a.per_query[i].precision) << '\t'
          << fixed6(a.per_query[i].recall) << '\t' << fixed6(b.per_query[i].precision) << '\t'
          << fixed6(b.per_query[i].recall) << '\n';
    out << "macro\t" << fixed6(a.macro_precision) << '\t' << fixed6(a.macro_recall) << '\t'
        << fixed6(b.macro_precision) << '\t' << fixed6(b.macro_recall) << '\n';
    return 0;
  } catch (const ParseError& e) {
    err << "error: query: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    report(e, err);
    return 1;
  }
}

}  // namespace hnsir
