#include "hnsir/query.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <unordered_map>

#include "hnsir/text.hpp"

namespace hnsir {

namespace {

bool is_space(char32_t cp) { return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' || cp == U'\v'; }

std::string describe(char32_t cp) { return "'" + encode_utf8(std::u32string(1, cp)) + "'"; }

// Parses a whole string as a finite real; nullopt otherwise.
std::optional<double> parse_real(std::string_view s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view query) : query_(query) {
    // Code points with the byte offset each one starts at.
    std::size_t offset = 0;
    for (char32_t cp : decode_utf8(query)) {
      cps_.push_back(cp);
      offsets_.push_back(offset);
      offset += encode_utf8(std::u32string(1, cp)).size();
    }
    offsets_.push_back(query.size());
  }

  QueryAST parse() {
    QueryAST ast;
    std::size_t i = 0;
    while (true) {
      while (i < cps_.size() && is_space(cps_[i])) ++i;
      if (i == cps_.size()) break;
      std::size_t end = i;
      while (end < cps_.size() && !is_space(cps_[end])) ++end;
      ast.clauses.push_back(clause(i, end));
      i = end;
    }
    if (ast.clauses.empty()) throw ParseError("empty query", 0);
    return ast;
  }

 private:
  Clause clause(std::size_t begin, std::size_t end) {
    Clause c;
    std::size_t i = begin;

    const auto colon = std::find(cps_.begin() + static_cast<std::ptrdiff_t>(begin),
                                 cps_.begin() + static_cast<std::ptrdiff_t>(end), U':');
    if (colon != cps_.begin() + static_cast<std::ptrdiff_t>(end)) {
      const auto colon_at = static_cast<std::size_t>(colon - cps_.begin());
      const std::string_view text = query_.substr(offsets_[begin], offsets_[colon_at] - offsets_[begin]);
      if (text.empty()) throw ParseError("missing weight before ':'", offsets_[begin]);
      const auto w = parse_real(text);
      if (!w) throw ParseError("malformed weight '" + std::string(text) + "'", offsets_[begin]);
      if (*w < 0.0 || *w > 1.0)
        throw ParseError("weight '" + std::string(text) + "' outside [0, 1]", offsets_[begin]);
      c.weight = *w;
      i = colon_at + 1;
      if (i == end) throw ParseError("dangling ':' with no term", offsets_[colon_at]);
    }

    if (cps_[i] == U'-') {
      c.negated = true;
      ++i;
      if (i == end || cps_[i] == U'~') throw ParseError("dangling negation", offsets_[i - 1]);
    }

    std::u32string term;
    while (i < end && is_term_char(cps_[i])) term.push_back(fold_case(cps_[i++]));
    if (term.empty()) throw ParseError("unexpected character " + describe(cps_[i]), offsets_[i]);
    c.term = encode_utf8(term);

    if (i < end && cps_[i] == U'~') {
      c.fuzzy = true;
      ++i;
    }
    if (i < end) throw ParseError("unexpected character " + describe(cps_[i]), offsets_[i]);
    return c;
  }

  std::string_view query_;
  std::u32string cps_;
  std::vector<std::size_t> offsets_;
};

}  // namespace

std::string_view to_string(ClauseOrigin origin) noexcept {
  switch (origin) {
    case ClauseOrigin::fuzzy_expansion:
      return "fuzzy";
    case ClauseOrigin::synonym_expansion:
      return "synonym";
    case ClauseOrigin::user:
      break;
  }
  return "user";
}

QueryAST parse_query(std::string_view query) { return QueryParser(query).parse(); }

std::size_t damerau_levenshtein(std::u32string_view a, std::u32string_view b) {
  // Lowrance-Wagner with a last-row-seen table per code point.
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t inf = n + m;
  const std::size_t width = m + 2;
  std::vector<std::size_t> h((n + 2) * width, 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return h[i * width + j]; };

  at(0, 0) = inf;
  for (std::size_t i = 0; i <= n; ++i) {
    at(i + 1, 0) = inf;
    at(i + 1, 1) = i;
  }
  for (std::size_t j = 0; j <= m; ++j) {
    at(0, j + 1) = inf;
    at(1, j + 1) = j;
  }

  std::unordered_map<char32_t, std::size_t> last_row;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t last_match_col = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      auto it = last_row.find(b[j - 1]);
      const std::size_t i1 = it == last_row.end() ? 0 : it->second;
      const std::size_t j1 = last_match_col;
      std::size_t cost = 1;
      if (a[i - 1] == b[j - 1]) {
        cost = 0;
        last_match_col = j;
      }
      at(i + 1, j + 1) = std::min({at(i, j) + cost, at(i + 1, j) + 1, at(i, j + 1) + 1,
                                   at(i1, j1) + (i - i1 - 1) + 1 + (j - j1 - 1)});
    }
    last_row[a[i - 1]] = i;
  }
  return at(n + 1, m + 1);
}

std::size_t damerau_levenshtein(std::string_view a, std::string_view b) {
  return damerau_levenshtein(decode_utf8(a), decode_utf8(b));
}

QueryAST expand_fuzzy(const QueryAST& ast, const Vocabulary& vocab, std::size_t max_edit) {
  if (max_edit < 1 || max_edit > 2) throw std::invalid_argument("fuzzy max_edit must be 1 or 2");
  QueryAST out = ast;
  if (std::none_of(ast.clauses.begin(), ast.clauses.end(), [](const Clause& c) { return c.fuzzy; }))
    return out;

  std::vector<std::u32string> terms;
  terms.reserve(vocab.size());
  for (const auto& t : vocab.terms()) terms.push_back(decode_utf8(t));

  for (const auto& parent : ast.clauses) {
    if (!parent.fuzzy) continue;
    const std::u32string needle = decode_utf8(parent.term);
    for (std::size_t id = 0; id < terms.size(); ++id) {
      const auto& candidate = terms[id];
      const std::size_t len_gap =
          candidate.size() > needle.size() ? candidate.size() - needle.size() : needle.size() - candidate.size();
      if (len_gap > max_edit) continue;
      const std::size_t d = damerau_levenshtein(needle, candidate);
      if (d < 1 || d > max_edit) continue;
      out.clauses.push_back(Clause{vocab.terms()[id], parent.weight / (1.0 + static_cast<double>(d)),
                                   parent.negated, false, ClauseOrigin::fuzzy_expansion});
    }
  }
  return out;
}

void SynonymTable::add(std::string term, std::string synonym, double prob) {
  if (term.empty() || synonym.empty()) throw SynonymError("synonym entry with empty term");
  if (!(prob > 0.0 && prob <= 1.0)) throw SynonymError("synonym probability must lie in (0, 1]");
  if (term == synonym) throw SynonymError("term '" + term + "' lists itself as a synonym");
  auto& list = entries_[term];
  for (const auto& s : list)
    if (s.term == synonym) throw SynonymError("duplicate synonym '" + synonym + "' for '" + term + "'");
  list.push_back(Synonym{std::move(synonym), prob});
}

const std::vector<Synonym>* SynonymTable::find(std::string_view term) const {
  auto it = entries_.find(term);
  return it == entries_.end() ? nullptr : &it->second;
}

SynonymTable SynonymTable::parse(std::istream& in) {
  SynonymTable table;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw SynonymError("synonyms line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t tab; (tab = rest.find('\t')) != std::string_view::npos; rest.remove_prefix(tab + 1))
      fields.push_back(rest.substr(0, tab));
    fields.push_back(rest);
    if (fields.size() != 3) fail("expected term<TAB>synonym<TAB>prob");
    const auto term = tokenize(fields[0]);
    const auto syn = tokenize(fields[1]);
    if (term.size() != 1 || syn.size() != 1) fail("term and synonym must each be a single term");
    const auto prob = parse_real(fields[2]);
    if (!prob) fail("malformed probability '" + std::string(fields[2]) + "'");
    try {
      table.add(term.front(), syn.front(), *prob);
    } catch (const SynonymError& e) {
      fail(e.what());
    }
  }
  return table;
}

SynonymTable SynonymTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SynonymError("cannot read synonyms file '" + path + "'");
  return parse(in);
}

QueryAST expand_synonyms(const QueryAST& ast, const SynonymTable& synonyms) {
  QueryAST out = ast;
  for (const auto& parent : ast.clauses) {
    if (parent.origin != ClauseOrigin::user) continue;
    const auto* list = synonyms.find(parent.term);
    if (!list) continue;
    for (const auto& s : *list)
      out.clauses.push_back(
          Clause{s.term, parent.weight * s.prob, parent.negated, false, ClauseOrigin::synonym_expansion});
  }
  return out;
}

HyperQuery compile_query(const QueryAST& ast, const Vocabulary& vocab) {
  HyperQuery q;
  std::set<std::string> unknown;
  for (const auto& c : ast.clauses) {
    const auto id = vocab.find(c.term);
    if (!id) {
      unknown.insert(c.term);
      continue;
    }
    auto& w = q.weights[*id];
    double& side = c.negated ? w.minus : w.plus;
    side = std::max(side, c.weight);
  }
  q.unknown_terms.assign(unknown.begin(), unknown.end());
  return q;
}

}  // namespace hnsir
