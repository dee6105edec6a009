#include "hnsir/engine.hpp"

#include <stdexcept>

namespace hnsir {

void EngineConfig::validate() const {
  if (default_k < 1) throw std::invalid_argument("k must be at least 1");
  if (max_edit < 1 || max_edit > 2) throw std::invalid_argument("fuzzy max_edit must be 1 or 2");
}

HyperQuery prepare_query(std::string_view query, const Vocabulary& vocab, bool fuzzy, std::size_t max_edit,
                         const SynonymTable* synonyms) {
  QueryAST ast = parse_query(query);
  if (fuzzy) ast = expand_fuzzy(ast, vocab, max_edit);
  if (synonyms) ast = expand_synonyms(ast, *synonyms);
  return compile_query(ast, vocab);
}

SearchEngine::SearchEngine(InvertedIndex index, EngineConfig config, SynonymTable synonyms)
    : config_(std::move(config)),
      synonyms_(std::move(synonyms)),
      index_(std::make_shared<const InvertedIndex>(std::move(index))) {
  config_.validate();
}

std::shared_ptr<const InvertedIndex> SearchEngine::snapshot() const {
  std::lock_guard lock(mutex_);
  return index_;
}

void SearchEngine::replace_index(InvertedIndex index) {
  auto next = std::make_shared<const InvertedIndex>(std::move(index));
  std::lock_guard lock(mutex_);
  index_.swap(next);
}

HyperQuery SearchEngine::prepare(std::string_view query, const SearchOptions& options,
                                 const InvertedIndex& index) const {
  return prepare_query(query, index.vocab(), options.fuzzy, config_.max_edit,
                       options.synonyms ? &synonyms_ : nullptr);
}

SearchResult SearchEngine::search(std::string_view query, const SearchOptions& options) const {
  const auto index = snapshot();
  HyperQuery q = prepare(query, options, *index);
  return SearchResult{score(*index, q, options.k), std::move(q.unknown_terms)};
}

Explanation SearchEngine::explain(std::string_view query, std::string_view doc_id,
                                  const SearchOptions& options) const {
  const auto index = snapshot();
  return hnsir::explain(*index, prepare(query, options, *index), doc_id);
}

}  // namespace hnsir
