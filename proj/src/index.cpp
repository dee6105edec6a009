#include "hnsir/index.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace hnsir {

namespace {

void check_weight(double w, const std::string& doc_id) {
  if (!(w >= 0.0 && w <= 1.0))
    throw std::invalid_argument("weight of document '" + doc_id + "' outside [0, 1]");
}

void check_query(const InvertedIndex& index, const HyperQuery& q) {
  for (const auto& [id, w] : q.weights)
    if (id >= index.num_terms())
      throw std::out_of_range("query term id " + std::to_string(id) + " outside the index vocabulary");
}

void check_k(std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
}

// Accumulates per-document scores for the documents a query touches.
class Accumulator {
 public:
  explicit Accumulator(std::size_t n_docs) : scores_(n_docs, 0.0), touched_flag_(n_docs, 0) {}

  void add(DocOrdinal doc, double value) {
    if (!touched_flag_[doc]) {
      touched_flag_[doc] = 1;
      touched_.push_back(doc);
    }
    scores_[doc] += value;
  }

  template <typename Fn>
  void rescale(Fn&& fn) {
    for (DocOrdinal d : touched_) scores_[d] = fn(d, scores_[d]);
  }

  std::vector<ScoredHit> top(const InvertedIndex& index, std::size_t k) const {
    // Ordinals follow doc id order, so they break ties directly.
    std::vector<std::pair<double, DocOrdinal>> ranked;
    ranked.reserve(touched_.size());
    for (DocOrdinal d : touched_) ranked.emplace_back(scores_[d], d);
    auto before = [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    };
    const std::size_t n = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n), ranked.end(), before);
    std::vector<ScoredHit> hits;
    hits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) hits.push_back(ScoredHit{index.doc(ranked[i].second).id, ranked[i].first});
    return hits;
  }

 private:
  std::vector<double> scores_;
  std::vector<char> touched_flag_;
  std::vector<DocOrdinal> touched_;
};

}  // namespace

bool ranks_before(const ScoredHit& a, const ScoredHit& b) noexcept {
  if (a.score != b.score) return a.score > b.score;
  return a.doc_id < b.doc_id;
}

InvertedIndex InvertedIndex::from_parts(Vocabulary vocab, WeightingMode mode, std::vector<StoredDoc> docs,
                                        std::vector<std::vector<Posting>> postings) {
  if (postings.size() != vocab.size())
    throw std::invalid_argument("posting list count differs from vocabulary size");
  for (std::size_t i = 1; i < docs.size(); ++i)
    if (!(docs[i - 1].id < docs[i].id)) throw std::invalid_argument("documents not strictly sorted by id");
  for (const auto& d : docs)
    if (d.id.empty()) throw std::invalid_argument("document id is empty");

  InvertedIndex index;
  index.forward_.resize(docs.size());
  index.plus_norms_.assign(docs.size(), 0.0);
  for (std::size_t term = 0; term < postings.size(); ++term) {
    const auto& list = postings[term];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Posting& p = list[i];
      if (p.doc >= docs.size()) throw std::invalid_argument("posting refers to an unknown document");
      if (i > 0 && list[i - 1].doc >= p.doc) throw std::invalid_argument("posting list not strictly sorted");
      check_weight(p.plus, docs[p.doc].id);
      check_weight(p.minus, docs[p.doc].id);
      if (p.plus == 0.0 && p.minus == 0.0) throw std::invalid_argument("posting with zero weight");
      index.forward_[p.doc].emplace(static_cast<TermId>(term), WeightPair{p.plus, p.minus});
      index.plus_norms_[p.doc] += p.plus * p.plus;
    }
    index.num_postings_ += list.size();
  }
  for (double& n : index.plus_norms_) n = std::sqrt(n);

  index.vocab_ = std::move(vocab);
  index.mode_ = mode;
  index.docs_ = std::move(docs);
  index.postings_ = std::move(postings);
  return index;
}

std::optional<DocOrdinal> InvertedIndex::find_doc(std::string_view id) const {
  auto it = std::lower_bound(docs_.begin(), docs_.end(), id,
                             [](const StoredDoc& d, std::string_view key) { return d.id < key; });
  if (it == docs_.end() || it->id != id) return std::nullopt;
  return static_cast<DocOrdinal>(it - docs_.begin());
}

InvertedIndex build_index(std::span<const WeightedDoc> docs, const Vocabulary& vocab, WeightingMode mode,
                          std::span<const DocumentRecord> records) {
  std::vector<const WeightedDoc*> order;
  order.reserve(docs.size());
  for (const auto& d : docs) order.push_back(&d);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->doc_id < b->doc_id; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (order[i - 1]->doc_id == order[i]->doc_id)
      throw std::invalid_argument("duplicate document id '" + order[i]->doc_id + "'");

  std::unordered_map<std::string_view, std::string_view> texts;
  for (const auto& r : records) texts.emplace(r.id, r.text);

  std::vector<StoredDoc> stored;
  stored.reserve(order.size());
  std::vector<std::vector<Posting>> postings(vocab.size());
  for (std::size_t ord = 0; ord < order.size(); ++ord) {
    const WeightedDoc& d = *order[ord];
    auto text = texts.find(d.doc_id);
    stored.push_back(StoredDoc{d.doc_id, text == texts.end() ? std::string{} : std::string(text->second)});
    for (const auto& [term, w] : d.weights) {
      if (term >= vocab.size())
        throw std::out_of_range("term id " + std::to_string(term) + " of document '" + d.doc_id +
                                "' outside the vocabulary");
      check_weight(w.plus, d.doc_id);
      check_weight(w.minus, d.doc_id);
      if (w.plus == 0.0 && w.minus == 0.0) continue;
      postings[term].push_back(Posting{static_cast<DocOrdinal>(ord), w.plus, w.minus});
    }
  }
  return InvertedIndex::from_parts(vocab, mode, std::move(stored), std::move(postings));
}

InvertedIndex index_corpus(std::span<const DocumentRecord> records, WeightingMode mode) {
  const Vocabulary vocab = build_vocabulary(records);
  const auto weighted = weigh_corpus(records, vocab, mode);
  return build_index(weighted, vocab, mode, records);
}

std::vector<ScoredHit> score(const InvertedIndex& index, const HyperQuery& q, std::size_t k) {
  check_k(k);
  check_query(index, q);
  Accumulator acc(index.num_docs());
  for (const auto& [term, qw] : q.weights) {
    const double qs = qw.signed_value();
    for (const Posting& p : index.postings(term)) acc.add(p.doc, qs * (p.plus - p.minus));
  }
  return acc.top(index, k);
}

std::vector<ScoredHit> score_oracle(std::span<const WeightedDoc> docs, const HyperQuery& q,
                                    const Vocabulary& vocab) {
  std::vector<ScoredHit> hits;
  hits.reserve(docs.size());
  if (vocab.size() == 0) {
    for (const auto& d : docs) hits.push_back(ScoredHit{d.doc_id, 0.0});
  } else {
    const auto table = build_ir_table(vocab.size());
    const auto query = to_hypernumber(q.weights, vocab.size());
    for (const auto& d : docs) hits.push_back(ScoredHit{d.doc_id, sim(table, query, to_hypernumber(d, vocab))});
  }
  std::sort(hits.begin(), hits.end(), ranks_before);
  return hits;
}

Explanation explain(const InvertedIndex& index, const HyperQuery& q, std::string_view doc_id) {
  check_query(index, q);
  const auto ordinal = index.find_doc(doc_id);
  if (!ordinal) throw NotFound("unknown document '" + std::string(doc_id) + "'");
  const TermWeights& dw = index.doc_weights(*ordinal);

  // Only terms weighted on both sides contribute; every other term adds 0.
  Explanation out;
  for (const auto& [term, qw] : q.weights) {
    if (qw.plus == 0.0 && qw.minus == 0.0) continue;
    auto it = dw.find(term);
    if (it == dw.end()) continue;
    const WeightPair& d = it->second;
    const double contribution = qw.signed_value() * d.signed_value();
    out.rows.push_back(ExplanationRow{index.vocab().term(term), qw.plus, qw.minus, d.plus, d.minus, contribution});
    out.total += contribution;
  }
  if (index.num_terms() > 0) {
    out.product = mul(build_ir_table(index.num_terms()), to_hypernumber(q.weights, index.num_terms()),
                      to_hypernumber(dw, index.num_terms()));
  }
  return out;
}

std::vector<ScoredHit> baseline_cosine(const InvertedIndex& index, const HyperQuery& q, std::size_t k) {
  check_k(k);
  check_query(index, q);
  double q_norm = 0.0;
  for (const auto& [term, w] : q.weights) q_norm += w.plus * w.plus;
  q_norm = std::sqrt(q_norm);

  Accumulator acc(index.num_docs());
  for (const auto& [term, qw] : q.weights)
    for (const Posting& p : index.postings(term)) acc.add(p.doc, qw.plus * p.plus);
  acc.rescale([&](DocOrdinal d, double dot) {
    const double denom = q_norm * index.plus_norm(d);
    return denom > 0.0 ? dot / denom : 0.0;
  });
  return acc.top(index, k);
}

}  // namespace hnsir
