#pragma once

// Corpus ingestion, vocabulary and per-term (w+, w-) weighting.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hnsir/algebra.hpp"

namespace hnsir {

using TermId = std::uint32_t;

enum class WeightingMode : std::uint8_t { standard = 0, complement = 1 };

std::string_view to_string(WeightingMode mode) noexcept;
WeightingMode parse_weighting_mode(std::string_view name);

/// Positive (asserted present) and negative (asserted absent) weight of a term.
struct WeightPair {
  double plus = 0.0;
  double minus = 0.0;

  [[nodiscard]] double signed_value() const noexcept { return plus - minus; }
  friend bool operator==(const WeightPair&, const WeightPair&) = default;
};

/// Sparse term_id -> (w+, w-), ordered by term id.
using TermWeights = std::map<TermId, WeightPair>;

struct DocumentRecord {
  std::string id;
  std::string text;
  // Pre-computed weights keyed by term. When present they replace tf-idf
  // weighting and define the document's term set.
  std::optional<std::vector<std::pair<std::string, WeightPair>>> weights;
};

class CorpusError : public std::runtime_error {
 public:
  explicit CorpusError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  /// 1-based line in the corpus file, 0 when not tied to a line.
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class Vocabulary {
 public:
  Vocabulary() = default;

  /// Rebuilds a vocabulary from terms in id order and their document frequencies.
  static Vocabulary from_terms(std::vector<std::string> terms, std::vector<std::uint64_t> df);

  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] std::optional<TermId> find(std::string_view term) const;
  [[nodiscard]] const std::string& term(TermId id) const { return terms_.at(id); }
  [[nodiscard]] std::uint64_t df(TermId id) const { return df_.at(id); }
  [[nodiscard]] const std::vector<std::string>& terms() const noexcept { return terms_; }
  [[nodiscard]] const std::vector<std::uint64_t>& document_frequencies() const noexcept { return df_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.terms_ == b.terms_ && a.df_ == b.df_;
  }

 private:
  friend Vocabulary build_vocabulary(std::span<const DocumentRecord> corpus);
  TermId intern(const std::string& term);

  std::vector<std::string> terms_;
  std::vector<std::uint64_t> df_;
  std::unordered_map<std::string, TermId> ids_;
};

struct WeightedDoc {
  std::string doc_id;
  TermWeights weights;

  friend bool operator==(const WeightedDoc&, const WeightedDoc&) = default;
};

/// Distinct terms of a record in first-occurrence order, with occurrence counts.
std::vector<std::pair<std::string, std::uint64_t>> term_counts(const DocumentRecord& doc);

/// Ids follow first occurrence across the corpus; df counts documents per term.
Vocabulary build_vocabulary(std::span<const DocumentRecord> corpus);

/// Log-tf times smoothed idf, max-normalized into [0, 1]:
///   raw = (1 + ln tf) * ln((1 + |D|) / (1 + df)),  w+ = raw / max raw.
/// Standard mode leaves w- = 0; complement mode sets w- = 1 - w+.
WeightedDoc weigh_document(const DocumentRecord& doc, const Vocabulary& vocab, std::size_t corpus_size,
                           WeightingMode mode);

std::vector<WeightedDoc> weigh_corpus(std::span<const DocumentRecord> corpus, const Vocabulary& vocab,
                                      WeightingMode mode);

/// Term i maps to w+ e_{2i+1} + w- e_{2i+2}.
HyperNumberd to_hypernumber(const TermWeights& weights, std::size_t n_terms);
HyperNumberd to_hypernumber(const WeightedDoc& doc, const Vocabulary& vocab);

/// Reads the odd/even coefficient pairs back into term weights.
TermWeights to_term_weights(const HyperNumberd& x);

/// One JSON object per line with string fields `id` and `text` and an optional
/// `weights` object mapping term -> [w_plus, w_minus]. Blank lines are skipped.
std::vector<DocumentRecord> parse_corpus(std::istream& in);
std::vector<DocumentRecord> load_corpus(const std::string& path);

/// Records from a `{"documents": [{"id": ..., "text": ...}, ...]}` body.
std::vector<DocumentRecord> parse_documents_payload(std::string_view body);

}  // namespace hnsir
