#pragma once

// Query pipeline and the snapshot holder shared by the CLI and the HTTP API.

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hnsir/index.hpp"
#include "hnsir/query.hpp"

namespace hnsir {

struct EngineConfig {
  WeightingMode mode = WeightingMode::standard;
  std::size_t max_edit = 1;
  std::optional<std::string> synonyms_path;
  std::size_t default_k = 10;
  std::string index_path;

  /// Throws std::invalid_argument unless k >= 1 and max_edit is 1 or 2.
  void validate() const;
};

struct SearchOptions {
  std::size_t k = 10;
  bool fuzzy = false;
  bool synonyms = false;
};

struct SearchResult {
  std::vector<ScoredHit> hits;
  std::vector<std::string> unknown_terms;
};

/// parse -> optional fuzzy expansion -> optional synonym expansion -> compile.
HyperQuery prepare_query(std::string_view query, const Vocabulary& vocab, bool fuzzy, std::size_t max_edit,
                         const SynonymTable* synonyms);

class SearchEngine {
 public:
  SearchEngine(InvertedIndex index, EngineConfig config, SynonymTable synonyms = {});

  /// Current immutable index; callers keep it alive for as long as they use it.
  [[nodiscard]] std::shared_ptr<const InvertedIndex> snapshot() const;

  /// Publishes a new index. Readers see either the old or the new one.
  void replace_index(InvertedIndex index);

  [[nodiscard]] HyperQuery prepare(std::string_view query, const SearchOptions& options,
                                   const InvertedIndex& index) const;
  [[nodiscard]] SearchResult search(std::string_view query, const SearchOptions& options) const;
  [[nodiscard]] Explanation explain(std::string_view query, std::string_view doc_id,
                                    const SearchOptions& options) const;

  [[nodiscard]] const EngineConfig& config() const noexcept { return config_; }
  [[nodiscard]] const SynonymTable& synonyms() const noexcept { return synonyms_; }
  [[nodiscard]] SearchOptions default_options() const { return SearchOptions{config_.default_k, false, false}; }

 private:
  EngineConfig config_;
  SynonymTable synonyms_;
  mutable std::mutex mutex_;
  std::shared_ptr<const InvertedIndex> index_;
};

}  // namespace hnsir
