#pragma once

// Inverted index over (w+, w-) postings and the rankers built on it.
//
// Ranking uses the closed form of the hypercomplex score,
//   Sim(Q, D) = sum_i (q_i+ - q_i-) (d_i+ - d_i-),
// accumulated term by term through the posting lists. score_oracle() computes
// the same value through the full algebra and exists to cross-check score().

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hnsir/algebra.hpp"
#include "hnsir/corpus.hpp"
#include "hnsir/query.hpp"

namespace hnsir {

using DocOrdinal = std::uint32_t;

struct Posting {
  DocOrdinal doc = 0;
  double plus = 0.0;
  double minus = 0.0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct StoredDoc {
  std::string id;
  std::string text;

  friend bool operator==(const StoredDoc&, const StoredDoc&) = default;
};

struct ScoredHit {
  std::string doc_id;
  double score = 0.0;

  friend bool operator==(const ScoredHit&, const ScoredHit&) = default;
};

/// Higher score first, then doc id ascending.
bool ranks_before(const ScoredHit& a, const ScoredHit& b) noexcept;

class NotFound : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class InvertedIndex {
 public:
  InvertedIndex() = default;

  /// Assembles an index from its persisted parts. Documents must be sorted by
  /// id; posting lists must be strictly increasing in document ordinal with
  /// weights in [0, 1].
  static InvertedIndex from_parts(Vocabulary vocab, WeightingMode mode, std::vector<StoredDoc> docs,
                                  std::vector<std::vector<Posting>> postings);

  [[nodiscard]] const Vocabulary& vocab() const noexcept { return vocab_; }
  [[nodiscard]] WeightingMode mode() const noexcept { return mode_; }
  [[nodiscard]] std::size_t num_docs() const noexcept { return docs_.size(); }
  [[nodiscard]] std::size_t num_terms() const noexcept { return vocab_.size(); }
  [[nodiscard]] std::size_t num_postings() const noexcept { return num_postings_; }

  [[nodiscard]] std::span<const Posting> postings(TermId term) const { return postings_.at(term); }
  [[nodiscard]] const std::vector<std::vector<Posting>>& all_postings() const noexcept { return postings_; }
  [[nodiscard]] const StoredDoc& doc(DocOrdinal ordinal) const { return docs_.at(ordinal); }
  [[nodiscard]] const std::vector<StoredDoc>& docs() const noexcept { return docs_; }
  [[nodiscard]] std::optional<DocOrdinal> find_doc(std::string_view id) const;
  /// Nonzero weights of one document, by term id.
  [[nodiscard]] const TermWeights& doc_weights(DocOrdinal ordinal) const { return forward_.at(ordinal); }
  /// Euclidean norm of the document's w+ vector.
  [[nodiscard]] double plus_norm(DocOrdinal ordinal) const { return plus_norms_.at(ordinal); }

 private:
  Vocabulary vocab_;
  WeightingMode mode_ = WeightingMode::standard;
  std::vector<StoredDoc> docs_;
  std::vector<std::vector<Posting>> postings_;
  std::vector<TermWeights> forward_;
  std::vector<double> plus_norms_;
  std::size_t num_postings_ = 0;
};

/// Postings hold exactly the (term, doc) pairs with a nonzero weight. When
/// `records` is given, their text is stored as document metadata.
InvertedIndex build_index(std::span<const WeightedDoc> docs, const Vocabulary& vocab, WeightingMode mode,
                          std::span<const DocumentRecord> records = {});

/// Vocabulary, weighting and index construction in one step.
InvertedIndex index_corpus(std::span<const DocumentRecord> records, WeightingMode mode);

/// Top-k documents by Sim. Documents sharing no term with the query are omitted.
std::vector<ScoredHit> score(const InvertedIndex& index, const HyperQuery& q, std::size_t k);

/// Sim through the full multiplication table for every document, ranked.
std::vector<ScoredHit> score_oracle(std::span<const WeightedDoc> docs, const HyperQuery& q,
                                    const Vocabulary& vocab);

struct ExplanationRow {
  std::string term;
  double q_plus = 0.0;
  double q_minus = 0.0;
  double d_plus = 0.0;
  double d_minus = 0.0;
  double contribution = 0.0;
};

struct Explanation {
  std::vector<ExplanationRow> rows;
  // Blockwise product of query and document; Est of it equals total.
  HyperNumberd product;
  double total = 0.0;
};

/// Per-term breakdown of Sim for one document, over the terms both the query
/// and the document weight.
Explanation explain(const InvertedIndex& index, const HyperQuery& q, std::string_view doc_id);

/// Classical cosine over the w+ components only.
std::vector<ScoredHit> baseline_cosine(const InvertedIndex& index, const HyperQuery& q, std::size_t k);

}  // namespace hnsir
