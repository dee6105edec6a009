#include "hnsir/service.hpp"

#include <charconv>
#include <stdexcept>

#include <httplib.h>

#include "hnsir/corpus.hpp"

namespace hnsir {

namespace {

ApiResponse error(int status, std::string_view code, const std::string& message) {
  return ApiResponse{status, {{"error", {{"code", code}, {"message", message}}}}};
}

ApiResponse parse_error(const ParseError& e) {
  ApiResponse r = error(400, "query_parse_error", e.message());
  r.body["error"]["position"] = e.position();
  return r;
}

// Reads optional flag "0"/"1"; throws std::invalid_argument otherwise.
bool flag(const ApiService::Params& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end() || it->second.empty() || it->second == "0") return false;
  if (it->second == "1") return true;
  throw std::invalid_argument("parameter '" + name + "' must be 0 or 1");
}

std::size_t positive(const ApiService::Params& params, const std::string& name, std::size_t fallback) {
  auto it = params.find(name);
  if (it == params.end() || it->second.empty()) return fallback;
  std::size_t v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0)
    throw std::invalid_argument("parameter '" + name + "' must be a positive integer");
  return v;
}

std::string required(const ApiService::Params& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end() || it->second.find_first_not_of(" \t\r\n") == std::string::npos)
    throw std::invalid_argument("parameter '" + name + "' is required");
  return it->second;
}

ApiService::Params params_of(const httplib::Request& req) {
  ApiService::Params params;
  for (const auto& [k, v] : req.params) params.emplace(k, v);  // first value wins
  return params;
}

void reply(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

nlohmann::json to_json(const Explanation& e) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : e.rows)
    rows.push_back({{"term", r.term},
                    {"q_plus", r.q_plus},
                    {"q_minus", r.q_minus},
                    {"d_plus", r.d_plus},
                    {"d_minus", r.d_minus},
                    {"contribution", r.contribution}});
  return {{"rows", rows}, {"total", e.total}};
}

nlohmann::json index_summary(const InvertedIndex& index) {
  return {{"docs", index.num_docs()},
          {"terms", index.num_terms()},
          {"postings", index.num_postings()},
          {"mode", std::string(to_string(index.mode()))}};
}

ApiService::ApiService(SearchEngine& engine, WeightingMode reindex_mode)
    : engine_(engine), reindex_mode_(reindex_mode) {}

ApiResponse ApiService::search(const Params& params) const {
  try {
    const std::string q = required(params, "q");
    const SearchOptions options{positive(params, "k", engine_.config().default_k), flag(params, "fuzzy"),
                                flag(params, "synonyms")};
    const SearchResult result = engine_.search(q, options);
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& h : result.hits) hits.push_back({{"doc_id", h.doc_id}, {"score", h.score}});
    return ApiResponse{200, {{"hits", hits}, {"unknown_terms", result.unknown_terms}}};
  } catch (const ParseError& e) {
    return parse_error(e);
  } catch (const std::invalid_argument& e) {
    return error(400, "bad_request", e.what());
  }
}

ApiResponse ApiService::explain(const Params& params) const {
  try {
    const std::string q = required(params, "q");
    const std::string doc = required(params, "doc");
    SearchOptions options = engine_.default_options();
    options.fuzzy = flag(params, "fuzzy");
    options.synonyms = flag(params, "synonyms");
    return ApiResponse{200, to_json(engine_.explain(q, doc, options))};
  } catch (const ParseError& e) {
    return parse_error(e);
  } catch (const NotFound& e) {
    return error(404, "not_found", e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, "bad_request", e.what());
  }
}

ApiResponse ApiService::document(std::string_view id) const {
  const auto index = engine_.snapshot();
  const auto ordinal = index->find_doc(id);
  if (!ordinal) return error(404, "not_found", "unknown document '" + std::string(id) + "'");
  const StoredDoc& d = index->doc(*ordinal);
  return ApiResponse{200, {{"id", d.id}, {"text", d.text}}};
}

ApiResponse ApiService::stats() const { return ApiResponse{200, index_summary(*engine_.snapshot())}; }

ApiResponse ApiService::reindex(std::string_view body) {
  std::lock_guard lock(reindex_mutex_);
  try {
    const auto records = parse_documents_payload(body);
    InvertedIndex next = index_corpus(records, reindex_mode_);
    nlohmann::json summary = index_summary(next);
    engine_.replace_index(std::move(next));
    return ApiResponse{200, summary};
  } catch (const CorpusError& e) {
    return error(400, "bad_corpus", e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, "bad_corpus", e.what());
  }
}

void ApiService::mount(httplib::Server& server) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Get("/api/search", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, search(params_of(req)));
  });
  server.Get("/api/explain", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, explain(params_of(req)));
  });
  server.Get(R"(/api/doc/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, document(req.matches[1].str()));
  });
  server.Get("/api/stats", [this](const httplib::Request&, httplib::Response& res) { reply(res, stats()); });
  server.Post("/api/index", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, reindex(req.body));
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    reply(res, error(res.status, res.status == 404 ? "not_found" : "error", "no such endpoint or method"));
  });
}

std::pair<std::string, int> parse_listen_address(std::string_view address) {
  const auto colon = address.rfind(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("listen address must be HOST:PORT");
  std::string host(address.substr(0, colon));
  if (host.empty()) host = "0.0.0.0";
  const auto port_text = address.substr(colon + 1);
  int port = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port < 0 || port > 65535)
    throw std::invalid_argument("invalid port in listen address '" + std::string(address) + "'");
  return {host, port};
}

bool serve_http(ApiService& service, const std::string& host, int port) {
  httplib::Server server;
  service.mount(server);
  return server.listen(host, port);
}

}  // namespace hnsir
