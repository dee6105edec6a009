#include "hnsir/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "hnsir/text.hpp"

namespace hnsir {

namespace {

constexpr double kComplementTolerance = 1e-12;

void check_unit_interval(double v, const std::string& what) {
  if (!(v >= 0.0 && v <= 1.0)) throw CorpusError(what + " must lie in [0, 1]");
}

}  // namespace

std::string_view to_string(WeightingMode mode) noexcept {
  return mode == WeightingMode::complement ? "complement" : "standard";
}

WeightingMode parse_weighting_mode(std::string_view name) {
  if (name == "standard") return WeightingMode::standard;
  if (name == "complement") return WeightingMode::complement;
  throw std::invalid_argument("unknown weighting mode '" + std::string(name) + "'");
}

Vocabulary Vocabulary::from_terms(std::vector<std::string> terms, std::vector<std::uint64_t> df) {
  if (terms.size() != df.size()) throw std::invalid_argument("vocabulary terms and df differ in length");
  Vocabulary v;
  v.ids_.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].empty()) throw std::invalid_argument("vocabulary term is empty");
    if (df[i] == 0) throw std::invalid_argument("vocabulary term '" + terms[i] + "' has df 0");
    if (!v.ids_.emplace(terms[i], static_cast<TermId>(i)).second)
      throw std::invalid_argument("duplicate vocabulary term '" + terms[i] + "'");
  }
  v.terms_ = std::move(terms);
  v.df_ = std::move(df);
  return v;
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
  auto it = ids_.find(std::string(term));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

TermId Vocabulary::intern(const std::string& term) {
  auto [it, inserted] = ids_.emplace(term, static_cast<TermId>(terms_.size()));
  if (inserted) {
    terms_.push_back(term);
    df_.push_back(0);
  }
  return it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> term_counts(const DocumentRecord& doc) {
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::unordered_map<std::string, std::size_t> slot;
  auto bump = [&](const std::string& term) {
    auto [it, inserted] = slot.emplace(term, counts.size());
    if (inserted) counts.emplace_back(term, 0);
    ++counts[it->second].second;
  };
  if (doc.weights) {
    for (const auto& [term, w] : *doc.weights) bump(term);
  } else {
    for (const auto& token : tokenize(doc.text)) bump(token);
  }
  return counts;
}

Vocabulary build_vocabulary(std::span<const DocumentRecord> corpus) {
  if (corpus.empty()) throw CorpusError("corpus is empty");
  Vocabulary vocab;
  std::unordered_set<std::string> seen_ids;
  for (const auto& doc : corpus) {
    if (doc.id.empty()) throw CorpusError("document id is empty");
    if (!seen_ids.insert(doc.id).second) throw CorpusError("duplicate document id '" + doc.id + "'");
    for (const auto& [term, count] : term_counts(doc)) ++vocab.df_[vocab.intern(term)];
  }
  return vocab;
}

WeightedDoc weigh_document(const DocumentRecord& doc, const Vocabulary& vocab, std::size_t corpus_size,
                           WeightingMode mode) {
  WeightedDoc out{doc.id, {}};
  const auto counts = term_counts(doc);

  auto resolve = [&](const std::string& term) {
    auto id = vocab.find(term);
    if (!id) throw CorpusError("term '" + term + "' of document '" + doc.id + "' is not in the vocabulary");
    return *id;
  };

  if (doc.weights) {
    for (const auto& [term, w] : *doc.weights) {
      check_unit_interval(w.plus, "w_plus of '" + term + "' in document '" + doc.id + "'");
      check_unit_interval(w.minus, "w_minus of '" + term + "' in document '" + doc.id + "'");
      if (mode == WeightingMode::complement && std::abs(w.plus + w.minus - 1.0) > kComplementTolerance)
        throw CorpusError("complement mode requires w_plus + w_minus = 1 for '" + term + "' in document '" +
                          doc.id + "'");
      out.weights[resolve(term)] = w;
    }
    return out;
  }

  std::vector<std::pair<TermId, double>> raw;
  raw.reserve(counts.size());
  double max_raw = 0.0;
  const double n_docs = static_cast<double>(corpus_size);
  for (const auto& [term, tf] : counts) {
    const TermId id = resolve(term);
    const double idf = std::log((1.0 + n_docs) / (1.0 + static_cast<double>(vocab.df(id))));
    const double r = (1.0 + std::log(static_cast<double>(tf))) * idf;
    raw.emplace_back(id, r);
    max_raw = std::max(max_raw, r);
  }
  for (const auto& [id, r] : raw) {
    const double plus = max_raw > 0.0 ? r / max_raw : 0.0;
    const double minus = mode == WeightingMode::complement ? 1.0 - plus : 0.0;
    out.weights[id] = WeightPair{plus, minus};
  }
  return out;
}

std::vector<WeightedDoc> weigh_corpus(std::span<const DocumentRecord> corpus, const Vocabulary& vocab,
                                      WeightingMode mode) {
  std::vector<WeightedDoc> out;
  out.reserve(corpus.size());
  for (const auto& doc : corpus) out.push_back(weigh_document(doc, vocab, corpus.size(), mode));
  return out;
}

HyperNumberd to_hypernumber(const TermWeights& weights, std::size_t n_terms) {
  HyperNumberd x(2 * n_terms);
  for (const auto& [id, w] : weights) {
    if (id >= n_terms)
      throw std::out_of_range("term id " + std::to_string(id) + " outside vocabulary of " +
                              std::to_string(n_terms));
    const BasisIndex p = 2 * static_cast<BasisIndex>(id) + 1;
    x.set(p, w.plus);
    x.set(p + 1, w.minus);
  }
  return x;
}

HyperNumberd to_hypernumber(const WeightedDoc& doc, const Vocabulary& vocab) {
  return to_hypernumber(doc.weights, vocab.size());
}

TermWeights to_term_weights(const HyperNumberd& x) {
  TermWeights out;
  x.for_each_nonzero([&](BasisIndex k, double c) {
    auto& w = out[static_cast<TermId>((k - 1) / 2)];
    (k % 2 == 1 ? w.plus : w.minus) = c;
  });
  return out;
}

namespace {

DocumentRecord record_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw CorpusError("record is not an object");
  if (!j.contains("id") || !j["id"].is_string()) throw CorpusError("missing string field 'id'");
  if (!j.contains("text") || !j["text"].is_string()) throw CorpusError("missing string field 'text'");
  DocumentRecord rec{j["id"].get<std::string>(), j["text"].get<std::string>(), std::nullopt};
  if (rec.id.empty()) throw CorpusError("empty document id");
  if (!j.contains("weights")) return rec;

  const auto& w = j["weights"];
  if (!w.is_object()) throw CorpusError("'weights' must be an object");
  std::vector<std::pair<std::string, WeightPair>> weights;
  for (const auto& [key, pair] : w.items()) {
    const auto tokens = tokenize(key);
    if (tokens.size() != 1) throw CorpusError("weight key '" + key + "' is not a single term");
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw CorpusError("weight of '" + key + "' must be [w_plus, w_minus]");
    for (const auto& seen : weights)
      if (seen.first == tokens.front()) throw CorpusError("duplicate weight key '" + key + "'");
    const WeightPair wp{pair[0].get<double>(), pair[1].get<double>()};
    check_unit_interval(wp.plus, "w_plus of '" + key + "'");
    check_unit_interval(wp.minus, "w_minus of '" + key + "'");
    weights.emplace_back(tokens.front(), wp);
  }
  rec.weights = std::move(weights);
  return rec;
}

}  // namespace

std::vector<DocumentRecord> parse_corpus(std::istream& in) {
  using nlohmann::ordered_json;
  std::vector<DocumentRecord> records;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      DocumentRecord rec = record_from_json(ordered_json::parse(line));
      if (!ids.insert(rec.id).second) throw CorpusError("duplicate document id '" + rec.id + "'");
      records.push_back(std::move(rec));
    } catch (const ordered_json::parse_error& e) {
      throw CorpusError(std::string("malformed JSON: ") + e.what(), line_no);
    } catch (const CorpusError& e) {
      throw CorpusError(e.what(), line_no);
    }
  }
  if (records.empty()) throw CorpusError("corpus is empty");
  return records;
}

std::vector<DocumentRecord> parse_documents_payload(std::string_view body) {
  using nlohmann::ordered_json;
  ordered_json j;
  try {
    j = ordered_json::parse(body);
  } catch (const ordered_json::parse_error& e) {
    throw CorpusError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("documents") || !j["documents"].is_array())
    throw CorpusError("expected an object with a 'documents' array");
  std::vector<DocumentRecord> records;
  std::unordered_set<std::string> ids;
  std::size_t n = 0;
  for (const auto& item : j["documents"]) {
    ++n;
    try {
      DocumentRecord rec = record_from_json(item);
      if (!ids.insert(rec.id).second) throw CorpusError("duplicate document id '" + rec.id + "'");
      records.push_back(std::move(rec));
    } catch (const CorpusError& e) {
      throw CorpusError("document " + std::to_string(n) + ": " + e.what());
    }
  }
  if (records.empty()) throw CorpusError("corpus is empty");
  return records;
}

std::vector<DocumentRecord> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read corpus file '" + path + "'");
  return parse_corpus(in);
}

}  // namespace hnsir
