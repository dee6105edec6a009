#pragma once

// HTTP API over a SearchEngine.
//
//   GET  /api/search?q=&k=&fuzzy=0|1&synonyms=0|1  {hits:[{doc_id,score}], unknown_terms:[...]}
//   GET  /api/explain?q=&doc=                      {rows:[{term,q_plus,q_minus,d_plus,d_minus,contribution}], total}
//   GET  /api/doc/{id}                             {id, text}
//   GET  /api/stats                                {docs, terms, postings, mode}
//   POST /api/index {documents:[{id,text}]}        rebuild summary
//
// Errors are {error:{code, message[, position]}} with a 4xx status.

#include <map>
#include <mutex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hnsir/engine.hpp"

namespace httplib {
class Server;
}

namespace hnsir {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

class ApiService {
 public:
  using Params = std::map<std::string, std::string>;

  ApiService(SearchEngine& engine, WeightingMode reindex_mode);

  [[nodiscard]] ApiResponse search(const Params& params) const;
  [[nodiscard]] ApiResponse explain(const Params& params) const;
  [[nodiscard]] ApiResponse document(std::string_view id) const;
  [[nodiscard]] ApiResponse stats() const;
  /// Builds a fresh index from the posted records and swaps it in.
  ApiResponse reindex(std::string_view body);

  /// Registers every route on `server`.
  void mount(httplib::Server& server);

 private:
  SearchEngine& engine_;
  WeightingMode reindex_mode_;
  std::mutex reindex_mutex_;
};

nlohmann::json to_json(const Explanation& e);
nlohmann::json index_summary(const InvertedIndex& index);

/// Splits "host:port" (host may be empty, meaning all interfaces).
std::pair<std::string, int> parse_listen_address(std::string_view address);

/// Serves until the process is stopped. Returns false if the address cannot be bound.
bool serve_http(ApiService& service, const std::string& host, int port);

}  // namespace hnsir
