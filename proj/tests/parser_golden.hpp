#pragma once

// Fixed query strings with their expected parse results.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hnsir/query.hpp"

namespace hnsir::testing {

struct GoldenQuery {
  std::string query;
  std::optional<QueryAST> ast;  // nullopt: a parse error is expected
  std::string error;
  std::size_t position = 0;
};

inline Clause clause(std::string term, double weight = 1.0, bool negated = false, bool fuzzy = false) {
  return Clause{std::move(term), weight, negated, fuzzy, ClauseOrigin::user};
}

inline std::vector<GoldenQuery> golden_queries() {
  return {
      {"apple -banana", QueryAST{{clause("apple"), clause("banana", 1.0, true)}}, "", 0},
      {"0.5:cherry~", QueryAST{{clause("cherry", 0.5, false, true)}}, "", 0},
      {"-", std::nullopt, "dangling negation", 0},
      {"", std::nullopt, "empty query", 0},
      {"0.5:", std::nullopt, "dangling ':' with no term", 3},
      {"1.5:apple", std::nullopt, "weight '1.5' outside [0, 1]", 0},
      {"Apple", QueryAST{{clause("apple")}}, "", 0},
      {"  apple \t banana  ", QueryAST{{clause("apple"), clause("banana")}}, "", 0},
      {"0:apple", QueryAST{{clause("apple", 0.0)}}, "", 0},
      {"1:apple", QueryAST{{clause("apple", 1.0)}}, "", 0},
      {"0.25:-pear~", QueryAST{{clause("pear", 0.25, true, true)}}, "", 0},
      {"-kiwi~ fig", QueryAST{{clause("kiwi", 1.0, true, true), clause("fig")}}, "", 0},
      {"abc:apple", std::nullopt, "malformed weight 'abc'", 0},
      {"apple :pear", std::nullopt, "missing weight before ':'", 6},
      {"apple,banana", std::nullopt, "unexpected character ','", 5},
      {"x1 2Y", QueryAST{{clause("x1"), clause("2y")}}, "", 0},
      {"Гіпер -ЧИСЛА", QueryAST{{clause("гіпер"), clause("числа", 1.0, true)}}, "", 0},
      {"apple~ apple", QueryAST{{clause("apple", 1.0, false, true), clause("apple")}}, "", 0},
      {".5:a 1e-1:b", QueryAST{{clause("a", 0.5), clause("b", 0.1)}}, "", 0},
      {"a --b", std::nullopt, "unexpected character '-'", 3},
  };
}

}  // namespace hnsir::testing
