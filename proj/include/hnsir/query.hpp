#pragma once

// Query mini-language: parsing, fuzzy and synonym expansion, compilation to
// per-term (w+, w-) weights.
//
//   query  = clause { ws clause } ;
//   clause = [ weight ":" ] [ "-" ] term [ "~" ] ;
//
// "-" puts the clause weight on the negative side, "~" asks for fuzzy
// expansion. Weights are reals in [0, 1], default 1.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hnsir/corpus.hpp"

namespace hnsir {

enum class ClauseOrigin { user, fuzzy_expansion, synonym_expansion };

std::string_view to_string(ClauseOrigin origin) noexcept;

struct Clause {
  std::string term;
  double weight = 1.0;
  bool negated = false;
  bool fuzzy = false;
  ClauseOrigin origin = ClauseOrigin::user;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct QueryAST {
  std::vector<Clause> clauses;

  friend bool operator==(const QueryAST&, const QueryAST&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        message_(message),
        position_(position) {}

  [[nodiscard]] const std::string& message() const noexcept { return message_; }
  /// Byte offset into the query string.
  [[nodiscard]] std::size_t position() const noexcept { return position_; }

 private:
  std::string message_;
  std::size_t position_;
};

QueryAST parse_query(std::string_view query);

/// Unrestricted Damerau-Levenshtein distance (adjacent transpositions may be
/// combined with further edits), over code points.
std::size_t damerau_levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t damerau_levenshtein(std::string_view a, std::string_view b);

/// Appends, for every fuzzy clause, one clause per vocabulary term at edit
/// distance d in [1, max_edit], weighted parent.weight / (1 + d).
QueryAST expand_fuzzy(const QueryAST& ast, const Vocabulary& vocab, std::size_t max_edit);

struct Synonym {
  std::string term;
  double prob = 1.0;

  friend bool operator==(const Synonym&, const Synonym&) = default;
};

class SynonymError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SynonymTable {
 public:
  /// prob must lie in (0, 1]; a term may not list itself.
  void add(std::string term, std::string synonym, double prob);

  [[nodiscard]] const std::vector<Synonym>* find(std::string_view term) const;
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  /// Tab-separated `term<TAB>synonym<TAB>prob` lines; blank lines and lines
  /// starting with '#' are ignored.
  static SynonymTable parse(std::istream& in);
  static SynonymTable load(const std::string& path);

 private:
  std::map<std::string, std::vector<Synonym>, std::less<>> entries_;
};

/// One level of expansion over user clauses: weight parent.weight * prob.
QueryAST expand_synonyms(const QueryAST& ast, const SynonymTable& synonyms);

struct HyperQuery {
  TermWeights weights;
  // Sorted, distinct query terms missing from the vocabulary.
  std::vector<std::string> unknown_terms;

  friend bool operator==(const HyperQuery&, const HyperQuery&) = default;
};

/// Negated clauses feed w-, the rest w+; repeated terms keep the maximum per side.
HyperQuery compile_query(const QueryAST& ast, const Vocabulary& vocab);

}  // namespace hnsir
